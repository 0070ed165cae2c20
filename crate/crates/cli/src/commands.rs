//! Command implementations. Every analysis emits a machine-readable JSON
//! value and a text rendering; both are deterministic for fixed input and
//! flags.

use std::sync::Arc;

use anyhow::{anyhow, bail};
use serde_json::{json, Value};

use grgrad_core::chains::{
    classify_ut, strong_classify, witness_chain, ChainShape, ChainVerdict, CoefficientFlags,
    FamilyProfile, PosetSpec,
};
use grgrad_core::exactla::Subspace;
use grgrad_core::groupoid::Groupoid;
use grgrad_core::module::GradedModule;
use grgrad_core::radical::{
    carac_component_oracle, component_radical, loewy_series, rad_gr_ring, radical_series,
    soc_gr_module, soc_gr_ring,
};
use grgrad_core::ring::{GradedRing, HomogeneousSubspace};
use grgrad_core::structure::{
    baer_gr_injective, composition_series, fitting, is_gr_semilocal, is_gr_semisimple,
};
use grgrad_core::{Budget, Error};

use crate::document::RingDocument;

pub struct Outcome {
    pub json: Value,
    pub text: String,
}

fn components_json(r: &GradedRing, space: &HomogeneousSubspace) -> Vec<Value> {
    let g = r.groupoid();
    space
        .components()
        .filter(|(_, s)| !s.is_zero())
        .map(|(d, s)| json!({"degree": g.morphism_name(d), "dim": s.dim()}))
        .collect()
}

fn components_text(r: &GradedRing, space: &HomogeneousSubspace) -> String {
    let g = r.groupoid();
    let mut out = String::new();
    for (d, s) in space.components() {
        if !s.is_zero() {
            out.push_str(&format!(
                "  component {}: dim {}\n",
                g.morphism_name(d),
                s.dim()
            ));
        }
    }
    out
}

pub fn cmd_validate(doc: &RingDocument) -> anyhow::Result<Outcome> {
    let groupoid = doc.build_groupoid()?;
    let gb = groupoid.validate();
    let mut violations: Vec<String> = gb.iter().map(|v| format!("groupoid: {v}")).collect();
    // build the ring without the validation wrapper so every violation lands
    // in the report
    match doc_build_ring_unvalidated(doc, &groupoid) {
        Ok(ring) => {
            let rb = ring.validate();
            violations.extend(rb.iter().map(|v| format!("ring: {v}")));
            if rb.is_empty() {
                let ring = Arc::new(ring);
                for block in &doc.modules {
                    match doc.build_module(&ring, &block.name) {
                        Ok(_) => {}
                        Err(e) => violations.push(format!("module {}: {e}", block.name)),
                    }
                }
            }
        }
        Err(e) => violations.push(format!("ring: {e}")),
    }
    let ok = violations.is_empty();
    let json = json!({
        "command": "validate",
        "ok": ok,
        "violations": violations,
    });
    let mut text = format!("validate: {}\n", if ok { "ok" } else { "FAILED" });
    for v in &violations {
        text.push_str(&format!("  {v}\n"));
    }
    Ok(Outcome { json, text })
}

fn doc_build_ring_unvalidated(
    doc: &RingDocument,
    groupoid: &Arc<Groupoid>,
) -> anyhow::Result<GradedRing> {
    use grgrad_core::exactla::Fp;
    use grgrad_core::ring::BasisVec;
    let field = Fp::new(doc.prime)?;
    let mut basis = Vec::new();
    let mut index = std::collections::BTreeMap::new();
    for b in &doc.basis {
        let degree = groupoid
            .morphism_by_name(&b.degree)
            .ok_or_else(|| anyhow!("unknown degree {}", b.degree))?;
        index.insert(b.name.clone(), basis.len());
        basis.push(BasisVec {
            name: b.name.clone(),
            degree,
        });
    }
    let look = |name: &str| -> anyhow::Result<usize> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| anyhow!("unknown basis name {name}"))
    };
    let mut products = Vec::new();
    for (l, r, out, c) in &doc.products {
        products.push((look(l)?, look(r)?, look(out)?, *c));
    }
    let mut units = Vec::new();
    for (obj, coords) in &doc.units {
        let e = groupoid
            .object_by_name(obj)
            .ok_or_else(|| anyhow!("unknown object {obj}"))?;
        let mut cs = Vec::new();
        for (name, c) in coords {
            cs.push((look(name)?, *c));
        }
        units.push((e, cs));
    }
    Ok(GradedRing::from_sparse(
        groupoid.clone(),
        field,
        basis,
        &products,
        &units,
    )?)
}

pub fn cmd_radical(doc: &RingDocument, budget: &Budget) -> anyhow::Result<Outcome> {
    let ring = doc.build_ring()?;
    let rad = rad_gr_ring(&ring, budget)?;
    // cross-check 1: the quasi-regularity oracle per degree, where affordable
    let mut checked = 0usize;
    let mut skipped = 0usize;
    for d in ring.layout().degrees() {
        match carac_component_oracle(&ring, d, budget) {
            Ok(s) => {
                let from_rad = rad.space.component(d).cloned().unwrap_or_else(|| {
                    Subspace::zero(ring.field(), ring.layout().component_dim(d))
                });
                if s != from_rad {
                    return Err(Error::internal(format!(
                        "quasi-regularity oracle disagrees with the lattice on degree {}",
                        ring.groupoid().morphism_name(d)
                    ))
                    .into());
                }
                checked += 1;
            }
            Err(Error::Budget(_)) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    // cross-check 2: the diagonal law rad^gr(R)_e = rad(R_e)
    let mut diagonal_engines = Vec::new();
    for e in ring.groupoid().objects() {
        let id = ring.groupoid().identity(e);
        if ring.layout().component_dim(id) == 0 {
            continue;
        }
        match component_radical(&ring, e, budget) {
            Ok((rad_e, engine)) => {
                let from_rad = rad.space.component(id).cloned().unwrap_or_else(|| {
                    Subspace::zero(ring.field(), ring.layout().component_dim(id))
                });
                if rad_e != from_rad {
                    return Err(Error::internal(format!(
                        "diagonal law fails at object {}",
                        ring.groupoid().object_name(e)
                    ))
                    .into());
                }
                diagonal_engines.push(json!({
                    "object": ring.groupoid().object_name(e),
                    "engine": engine,
                }));
            }
            Err(Error::Budget(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let json = json!({
        "command": "radical",
        "engine": rad.engine,
        "two_sided_verified": rad.two_sided_checked,
        "components": components_json(&ring, &rad.space),
        "total_dim": rad.space.dim(),
        "cross_checks": {
            "quasi_regularity_degrees_checked": checked,
            "quasi_regularity_degrees_skipped": skipped,
            "diagonal_law": diagonal_engines,
        },
    });
    let mut text = format!(
        "radical: total dim {} (engine: {}, two-sided verified: {})\n",
        rad.space.dim(),
        rad.engine,
        rad.two_sided_checked
    );
    text.push_str(&components_text(&ring, &rad.space));
    text.push_str(&format!(
        "cross-check: quasi-regularity oracle agreed on {checked} degrees ({skipped} over budget)\n"
    ));
    text.push_str(&format!(
        "cross-check: diagonal law rad(R_e) verified at {} objects\n",
        diagonal_engines.len()
    ));
    Ok(Outcome { json, text })
}

pub fn cmd_socle(doc: &RingDocument, budget: &Budget) -> anyhow::Result<Outcome> {
    let ring = doc.build_ring()?;
    let soc = soc_gr_ring(&ring, budget)?;
    // cross-check: soc = annihilator of the radical
    let j = rad_gr_ring(&ring, budget)?;
    let m = GradedModule::regular(ring.clone());
    let by_ann = soc_gr_module(&m, &j.space)?;
    if by_ann != soc.space {
        return Err(
            Error::internal("lattice socle disagrees with the annihilator of the radical").into(),
        );
    }
    let json = json!({
        "command": "socle",
        "engine": soc.engine,
        "components": components_json(&ring, &soc.space),
        "total_dim": soc.space.dim(),
        "cross_checks": {"annihilator_of_radical": "agreed"},
    });
    let mut text = format!(
        "socle: total dim {} (engine: {}, annihilator cross-check: agreed)\n",
        soc.space.dim(),
        soc.engine
    );
    text.push_str(&components_text(&ring, &soc.space));
    Ok(Outcome { json, text })
}

pub fn cmd_loewy(doc: &RingDocument, module: &str, budget: &Budget) -> anyhow::Result<Outcome> {
    let ring = doc.build_ring()?;
    let m = doc.build_module(&ring, module)?;
    let j = rad_gr_ring(&ring, budget)?.space;
    let loewy = loewy_series(&m, &j)?;
    let rads = radical_series(&m, &j)?;
    let g = ring.groupoid();
    let loewy_dims: Vec<usize> = loewy.terms.iter().map(|t| t.dim()).collect();
    let rad_dims: Vec<usize> = rads.iter().map(|t| t.dim()).collect();
    let profiles: Vec<Value> = loewy
        .step_profiles
        .iter()
        .map(|p| {
            Value::Array(
                p.iter()
                    .map(|(e, d)| json!({"object": g.object_name(*e), "dim": d}))
                    .collect(),
            )
        })
        .collect();
    let json = json!({
        "command": "loewy",
        "module": module,
        "engine": "socle-quotients+annihilators",
        "agreement": "both Loewy routes agreed",
        "socle_series_dims": loewy_dims,
        "step_profiles": profiles,
        "radical_series_dims": rad_dims,
    });
    let text = format!(
        "loewy of module {module}: socle series dims {loewy_dims:?} (both routes agreed)\nradical series dims {rad_dims:?}\n"
    );
    Ok(Outcome { json, text })
}

pub fn cmd_compseries(
    doc: &RingDocument,
    module: &str,
    seed: u64,
    budget: &Budget,
) -> anyhow::Result<Outcome> {
    let ring = doc.build_ring()?;
    let m = doc.build_module(&ring, module)?;
    let j = rad_gr_ring(&ring, budget)?.space;
    let series = composition_series(&m, &j, seed, budget)?;
    let g = ring.groupoid();
    let factors: Vec<Value> = series
        .factors
        .iter()
        .map(|f| {
            json!({
                "carrier_object": g.object_name(f.carrier),
                "degrees": f.degree_dims.iter()
                    .map(|&(d, dim)| json!({"degree": g.morphism_name(d), "dim": dim}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let chain_dims: Vec<usize> = series.chain.iter().map(|c| c.dim()).collect();
    let json = json!({
        "command": "compseries",
        "module": module,
        "seed": seed,
        "length": series.length(),
        "chain_dims": chain_dims,
        "factors": factors,
    });
    let mut text = format!(
        "composition series of module {module} (seed {seed}): length {}\n",
        series.length()
    );
    for (k, f) in series.factors.iter().enumerate() {
        let degs: Vec<String> = f
            .degree_dims
            .iter()
            .map(|&(d, dim)| format!("{}:{}", g.morphism_name(d), dim))
            .collect();
        text.push_str(&format!(
            "  factor {}: carried at object {} ({})\n",
            k + 1,
            g.object_name(f.carrier),
            degs.join(", ")
        ));
    }
    Ok(Outcome { json, text })
}

pub fn cmd_semisimple(doc: &RingDocument, budget: &Budget) -> anyhow::Result<Outcome> {
    let ring = doc.build_ring()?;
    let verdict = is_gr_semisimple(&ring, budget)?;
    let soc = soc_gr_ring(&ring, budget)?;
    let soc_full = soc.space.dim() == ring.dim();
    if verdict != soc_full {
        return Err(Error::internal("rad = 0 and soc = R disagree").into());
    }
    let json = json!({
        "command": "semisimple",
        "gr_semisimple": verdict,
        "criteria": {"radical_zero": verdict, "socle_full": soc_full},
    });
    let text =
        format!("gr-semisimple: {verdict} (radical zero: {verdict}, socle full: {soc_full})\n");
    Ok(Outcome { json, text })
}

pub fn cmd_semilocal(doc: &RingDocument, budget: &Budget) -> anyhow::Result<Outcome> {
    let ring = doc.build_ring()?;
    let rep = is_gr_semilocal(&ring, budget)?;
    let g = ring.groupoid();
    let engines: Vec<Value> = rep
        .component_engines
        .iter()
        .map(|(e, eng)| json!({"object": g.object_name(*e), "engine": eng}))
        .collect();
    let json = json!({
        "command": "semilocal",
        "gr_semilocal": rep.gr_semilocal,
        "via_quotient": rep.via_quotient,
        "via_components": rep.via_components,
        "component_engines": engines,
    });
    let text = format!(
        "gr-semilocal: {} (quotient route: {}, per-object route: {})\n",
        rep.gr_semilocal, rep.via_quotient, rep.via_components
    );
    Ok(Outcome { json, text })
}

pub fn cmd_fitting(doc: &RingDocument, endo: &str, budget: &Budget) -> anyhow::Result<Outcome> {
    let ring = doc.build_ring()?;
    let (module, matrix, degree) = doc.build_endomorphism(&ring, endo)?;
    let rep = fitting(&module, &matrix, degree)?;
    let _ = budget;
    let json = json!({
        "command": "fitting",
        "endomorphism": endo,
        "n": rep.n,
        "kernel_dim": rep.kernel.dim(),
        "image_dim": rep.image.dim(),
        "direct_sum_verified": rep.direct_sum_ok,
        "bijective_on_image": rep.bijective_on_image,
        "gr_invertible": rep.gr_inverse.is_some(),
    });
    let text = format!(
        "fitting of {endo}: n = {}, ker dim {}, im dim {}, M = ker (+) im: {}, bijective on image: {}, gr-invertible: {}\n",
        rep.n,
        rep.kernel.dim(),
        rep.image.dim(),
        rep.direct_sum_ok,
        rep.bijective_on_image,
        rep.gr_inverse.is_some()
    );
    Ok(Outcome { json, text })
}

pub fn cmd_injective(doc: &RingDocument, module: &str, budget: &Budget) -> anyhow::Result<Outcome> {
    let ring = doc.build_ring()?;
    let m = doc.build_module(&ring, module)?;
    let rep = baer_gr_injective(&m, budget)?;
    let g = ring.groupoid();
    let witness = rep.witness.as_ref().map(|(u, d)| {
        json!({
            "ideal_dim": u.dim(),
            "ideal_components": components_json(&ring, u),
            "hom_degree": g.morphism_name(*d),
        })
    });
    let json = json!({
        "command": "injective",
        "module": module,
        "gr_injective": rep.injective,
        "witness": witness,
    });
    let text = match &rep.witness {
        None => format!("module {module} is gr-injective (Baer test passed)\n"),
        Some((u, d)) => format!(
            "module {module} is NOT gr-injective: a degree-{} hom from an ideal of dim {} does not extend\n",
            g.morphism_name(*d),
            u.dim()
        ),
    };
    Ok(Outcome { json, text })
}

fn verdict_json(v: &ChainVerdict) -> Value {
    json!({
        "right": {
            "gamma0_artinian": v.right_gamma0_artinian,
            "gamma0_noetherian": v.right_gamma0_noetherian,
            "strongly_gamma0_artinian": v.right_strong_artinian,
            "strongly_gamma0_noetherian": v.right_strong_noetherian,
            "gr_artinian": v.right_gr_artinian,
            "gr_noetherian": v.right_gr_noetherian,
        },
        "left": {
            "gamma0_artinian": v.left_gamma0_artinian,
            "gamma0_noetherian": v.left_gamma0_noetherian,
            "strongly_gamma0_artinian": v.left_strong_artinian,
            "strongly_gamma0_noetherian": v.left_strong_noetherian,
            "gr_artinian": v.left_gr_artinian,
            "gr_noetherian": v.left_gr_noetherian,
        },
    })
}

pub fn parse_coeff_flags(spec: &str) -> anyhow::Result<CoefficientFlags> {
    let mut flags = CoefficientFlags {
        right_artinian: false,
        right_noetherian: false,
        left_artinian: false,
        left_noetherian: false,
    };
    for tok in spec.split(',') {
        match tok.trim() {
            "ra" => flags.right_artinian = true,
            "rn" => flags.right_noetherian = true,
            "la" => flags.left_artinian = true,
            "ln" => flags.left_noetherian = true,
            "" => {}
            other => bail!("unknown coefficient flag {other:?} (expected ra|rn|la|ln)"),
        }
    }
    Ok(flags)
}

pub fn cmd_classify_chains(
    spec: &PosetSpec,
    flags: CoefficientFlags,
    side: Option<&str>,
    cond: Option<&str>,
) -> anyhow::Result<Outcome> {
    let v = classify_ut(spec, flags)?;
    let queried = match (side, cond) {
        (Some(s), Some(c)) => {
            let val = match (s, c) {
                ("right", "artinian") => v.right_gamma0_artinian,
                ("right", "noetherian") => v.right_gamma0_noetherian,
                ("left", "artinian") => v.left_gamma0_artinian,
                ("left", "noetherian") => v.left_gamma0_noetherian,
                _ => bail!("side must be left|right and cond artinian|noetherian"),
            };
            Some((format!("{s} gamma0-{c}"), val))
        }
        (None, None) => None,
        _ => bail!("--side and --cond must be given together"),
    };
    let json = json!({
        "command": "classify-chains",
        "verdicts": verdict_json(&v),
        "failures": v.failures.iter()
            .map(|(name, shape)| json!({"condition": name, "witness_shape": format!("{shape:?}")}))
            .collect::<Vec<_>>(),
        "query": queried.as_ref().map(|(name, val)| json!({
            "condition": name,
            "holds": val,
        })),
    });
    let mut text = String::new();
    if let Some((name, val)) = &queried {
        text.push_str(&format!(
            "{name}: {}\n",
            if *val {
                "holds"
            } else {
                "fails (use `grgrad witness` for an explicit chain)"
            }
        ));
    }
    text.push_str(&format!(
        "right: gamma0-artinian {}, gamma0-noetherian {}, strongly {}/{}, gr {}/{}\n",
        v.right_gamma0_artinian,
        v.right_gamma0_noetherian,
        v.right_strong_artinian,
        v.right_strong_noetherian,
        v.right_gr_artinian,
        v.right_gr_noetherian
    ));
    text.push_str(&format!(
        "left:  gamma0-artinian {}, gamma0-noetherian {}, strongly {}/{}, gr {}/{}\n",
        v.left_gamma0_artinian,
        v.left_gamma0_noetherian,
        v.left_strong_artinian,
        v.left_strong_noetherian,
        v.left_gr_artinian,
        v.left_gr_noetherian
    ));
    Ok(Outcome { json, text })
}

pub fn cmd_witness(
    spec: &PosetSpec,
    side: &str,
    cond: &str,
    length: usize,
) -> anyhow::Result<Outcome> {
    let shape = match (side, cond) {
        ("right", "artinian") => ChainShape::AscendingAbove,
        ("right", "noetherian") => ChainShape::DescendingAbove,
        ("left", "artinian") => ChainShape::DescendingBelow,
        ("left", "noetherian") => ChainShape::AscendingBelow,
        _ => bail!("side must be left|right and cond artinian|noetherian"),
    };
    let w = witness_chain(spec, shape, length)?;
    let json = json!({
        "command": "witness",
        "condition": format!("{side} gamma0-{cond}"),
        "shape": format!("{:?}", w.shape),
        "chain": w.descriptors,
        "truncation_elements": w.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "strictness_certified": w.certified,
    });
    let mut text = format!(
        "witness chain for failing {side} gamma0-{cond} (strictness certified on a truncation):\n"
    );
    let arrow = match shape {
        ChainShape::AscendingAbove | ChainShape::DescendingBelow => " > ",
        _ => " < ",
    };
    text.push_str(&format!("  {}\n", w.descriptors.join(arrow)));
    Ok(Outcome { json, text })
}

pub fn cmd_strong_classify(profile: &FamilyProfile) -> anyhow::Result<Outcome> {
    let v = strong_classify(profile)?;
    let json = json!({
        "command": "strong-classify",
        "gamma0_artinian": v.gamma0_artinian,
        "gamma0_noetherian": v.gamma0_noetherian,
        "strongly_gamma0_artinian": v.strongly_gamma0_artinian,
        "strongly_gamma0_noetherian": v.strongly_gamma0_noetherian,
        "gr_artinian": v.gr_artinian,
        "gr_noetherian": v.gr_noetherian,
    });
    let text = format!(
        "gamma0: {}/{}, strongly gamma0: {}/{}, gr: {}/{} (artinian/noetherian)\n",
        v.gamma0_artinian,
        v.gamma0_noetherian,
        v.strongly_gamma0_artinian,
        v.strongly_gamma0_noetherian,
        v.gr_artinian,
        v.gr_noetherian
    );
    Ok(Outcome { json, text })
}

/// `constant:<c>[:finite]` | `ramp` | `tail:<c>:exceptions=<a,b,...>`
pub fn parse_profile(spec: &str) -> anyhow::Result<FamilyProfile> {
    if spec == "ramp" {
        return Ok(FamilyProfile::Ramp);
    }
    if let Some(rest) = spec.strip_prefix("constant:") {
        let (value, infinite) = match rest.strip_suffix(":finite") {
            Some(v) => (v, false),
            None => (rest, true),
        };
        return Ok(FamilyProfile::Constant {
            value: value.parse()?,
            infinite_support: infinite,
        });
    }
    if let Some(rest) = spec.strip_prefix("tail:") {
        let (tail, exc) = match rest.split_once(":exceptions=") {
            Some((t, e)) => (t, e),
            None => (rest, ""),
        };
        let exceptions: Vec<u32> = if exc.is_empty() {
            Vec::new()
        } else {
            exc.split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()?
        };
        return Ok(FamilyProfile::ExceptionalPlusTail {
            exceptions,
            tail: tail.parse()?,
        });
    }
    bail!("unknown profile {spec:?} (expected constant:<c>[:finite] | ramp | tail:<c>[:exceptions=..])")
}
