//! Descriptor grammars for the command line: coefficient algebras, finite
//! posets, ordinal posets, and category-ring module lists.

use std::sync::Arc;

use anyhow::{anyhow, bail};

use grgrad_core::chains::PosetSpec;
use grgrad_core::exactla::Matrix;
use grgrad_core::poset::Poset;
use grgrad_core::ring::{
    field_algebra, matrix_algebra, truncated_polynomial_algebra, AlgebraModule, GradedRing,
};

/// `field` | `dual:<n>` (F_p[x]/(x^n)) | `matrix:<n>` (M_n(F_p))
pub fn parse_algebra(spec: &str, prime: u32) -> anyhow::Result<Arc<GradedRing>> {
    if spec == "field" {
        return Ok(field_algebra(prime)?);
    }
    if let Some(n) = spec.strip_prefix("dual:") {
        let n: usize = n.parse()?;
        return Ok(truncated_polynomial_algebra(prime, n)?);
    }
    if let Some(n) = spec.strip_prefix("matrix:") {
        let n: usize = n.parse()?;
        return Ok(matrix_algebra(prime, n)?);
    }
    bail!("unknown algebra spec {spec:?} (expected field | dual:<n> | matrix:<n>)")
}

/// `chain:<n>` | `antichain:<n>` | `finite:<a><b,...>` with 0-based edges
pub fn parse_finite_poset(spec: &str) -> anyhow::Result<Poset> {
    if let Some(n) = spec.strip_prefix("chain:") {
        return Ok(Poset::chain(n.parse()?));
    }
    if let Some(n) = spec.strip_prefix("antichain:") {
        return Ok(Poset::antichain(n.parse()?));
    }
    if let Some(edges) = spec.strip_prefix("finite:") {
        let mut lt = Vec::new();
        let mut max = 0usize;
        if !edges.is_empty() {
            for edge in edges.split(',') {
                let (a, b) = edge
                    .split_once('<')
                    .ok_or_else(|| anyhow!("edge {edge:?} must look like a<b"))?;
                let a: usize = a.trim().parse()?;
                let b: usize = b.trim().parse()?;
                max = max.max(a).max(b);
                lt.push((a, b));
            }
        }
        return Ok(Poset::from_relations(max + 1, &lt)?);
    }
    bail!("unknown poset spec {spec:?} (expected chain:<n> | antichain:<n> | finite:<edges>)")
}

/// Full poset grammar: any finite form above, or `ordinal:w*K+M[:reversed]`.
pub fn parse_poset_spec(spec: &str) -> anyhow::Result<PosetSpec> {
    if let Some(rest) = spec.strip_prefix("ordinal:") {
        let (body, reversed) = match rest.strip_suffix(":reversed") {
            Some(b) => (b, true),
            None => (rest, false),
        };
        let (k, m) = parse_ordinal_body(body)?;
        return Ok(PosetSpec::Ordinal { k, m, reversed });
    }
    Ok(PosetSpec::Finite(parse_finite_poset(spec)?))
}

/// `w*K+M` | `w*K` | `w+M` | `w` | `M`
fn parse_ordinal_body(body: &str) -> anyhow::Result<(u32, u32)> {
    let body = body.trim();
    if let Some(rest) = body.strip_prefix("w*") {
        if let Some((k, m)) = rest.split_once('+') {
            return Ok((k.parse()?, m.parse()?));
        }
        return Ok((rest.parse()?, 0));
    }
    if let Some(rest) = body.strip_prefix("w+") {
        return Ok((1, rest.parse()?));
    }
    if body == "w" {
        return Ok((1, 0));
    }
    Ok((0, body.parse()?))
}

/// Comma-separated module tokens over the coefficient algebra:
/// `A` (regular), `A^k` (free power), `A/x` (the simple quotient of a
/// truncated polynomial algebra).
pub fn parse_modules(spec: &str, algebra: &Arc<GradedRing>) -> anyhow::Result<Vec<AlgebraModule>> {
    let mut out = Vec::new();
    for tok in spec.split(',') {
        let tok = tok.trim();
        if tok == "A" {
            out.push(AlgebraModule::regular(algebra));
        } else if let Some(k) = tok.strip_prefix("A^") {
            let k: usize = k.parse()?;
            if k == 0 {
                bail!("A^0 is not a module token");
            }
            out.push(AlgebraModule::regular(algebra).power(k, algebra.field()));
        } else if tok == "A/x" {
            // requires x with x * everything = 0 in degree terms of dual:n
            let f = algebra.field();
            let dim = algebra.dim();
            let mut action = Vec::new();
            for i in 0..dim {
                if algebra.basis_name(i) == "1" {
                    action.push(Matrix::identity(f, 1));
                } else {
                    action.push(Matrix::zeros(f, 1, 1));
                }
            }
            if !(0..dim).any(|i| algebra.basis_name(i) == "x") {
                bail!("A/x needs a dual-number style algebra with a basis element named x");
            }
            let m = AlgebraModule {
                name: "A/x".into(),
                dim: 1,
                action,
            };
            m.validate(algebra)?;
            out.push(m);
        } else {
            bail!("unknown module token {tok:?} (expected A | A^k | A/x)");
        }
    }
    Ok(out)
}
