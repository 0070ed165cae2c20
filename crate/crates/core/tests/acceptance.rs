//! Acceptance suite: one test per shipped criterion, each printing a
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; the harness verdicts match them one to one.

mod common;

use std::sync::Arc;

use grgrad_core::chains::{
    classify_ut, strong_classify, witness_chain, ChainShape, CoefficientFlags, FamilyProfile,
    PosetSpec,
};
use grgrad_core::exactla::Subspace;
use grgrad_core::module::GradedModule;
use grgrad_core::poset::Poset;
use grgrad_core::radical::{
    carac_component_oracle, component_radical, loewy_series, rad_gr_module, rad_gr_ring,
    soc_gr_module, soc_gr_ring, submodule_lattice,
};
use grgrad_core::ring::{
    blocked_matrix_ring, build_category_ring, build_pair_matrix_ring, build_ut, field_algebra,
    truncated_polynomial_algebra, AlgebraModule, GradedRing, HomogeneousSubspace,
};
use grgrad_core::structure::{
    baer_gr_injective, composition_series, find_gr_dedekind_violation, fitting, gr_length,
    is_gr_essential, is_gr_semilocal, is_gr_semisimple, is_gr_superfluous,
    jordan_holder_equivalent, projective_category_radical_check,
};
use grgrad_core::{Budget, Error};

use common::*;

fn pass(n: u32, msg: &str) {
    println!("criterion {n:02}: PASS - {msg}");
}

#[test]
fn criterion_01_radical_of_matrix_ring_closed_form() {
    // rad^gr(M_3(F_5[x]/(x^2))) = M_3(x*A): dimension 1 per degree, total 9,
    // exact subspace equality
    let budget = default_budget();
    let a = truncated_polynomial_algebra(5, 2).unwrap();
    let r = build_pair_matrix_ring(&a, 3).unwrap();
    let rad = rad_gr_ring(&r, &budget).unwrap();
    assert_eq!(rad.space.dim(), 9);
    let expected_local = Subspace::from_rows(r.field(), 2, vec![vec![0, 1]]);
    let mut degrees = 0;
    for d in r.layout().degrees() {
        let comp = rad.space.component(d).cloned().unwrap();
        assert_eq!(comp, expected_local, "component must be x*A exactly");
        degrees += 1;
    }
    assert_eq!(degrees, 9);
    pass(
        1,
        "rad M_3(F_5[x]/(x^2)) = M_3(x*A), dim 1 per degree, total 9",
    );
}

#[test]
fn criterion_02_radical_of_triangular_rings_closed_form() {
    // rad^gr(UT_I(F_q)) = strict upper span for |I| in {2,3,4}, q in {2,3,5}
    let budget = default_budget();
    for n in [2usize, 3, 4] {
        for q in [2u32, 3, 5] {
            let a = field_algebra(q).unwrap();
            let r = build_ut(&a, &Poset::chain(n)).unwrap();
            let rad = rad_gr_ring(&r, &budget).unwrap();
            let mut expected = HomogeneousSubspace::zero();
            for i in 0..r.dim() {
                let name = r.basis_name(i);
                let nums: Vec<usize> = name
                    .trim_start_matches("E(")
                    .trim_end_matches(')')
                    .split(',')
                    .map(|s| s.parse().unwrap())
                    .collect();
                if nums[0] < nums[1] {
                    let d = r.degree_of_basis(i);
                    let dim = r.layout().component_dim(d);
                    let mut v = r.zero_vec();
                    v[i] = 1;
                    expected.insert_vector(r.field(), dim, d, &r.layout().global_to_local(d, &v));
                }
            }
            let expected = expected.normalize();
            assert_eq!(rad.space, expected, "UT chain {n} over F_{q}");
            assert_eq!(rad.space.dim(), n * (n - 1) / 2);
        }
    }
    pass(
        2,
        "rad UT_I(F_q) is the strict-upper span for |I| in 2..4, q in {2,3,5}",
    );
}

#[test]
fn criterion_03_carac_oracle_agreement() {
    // on >= 20 rings, the quasi-regularity set equals the lattice radical in
    // every degree within the enumeration budget
    let budget = default_budget();
    let pool = ring_pool_with_quotients(0xC0FFEE);
    assert!(
        pool.len() >= 20,
        "need at least 20 rings, got {}",
        pool.len()
    );
    let mut rings_fully_checked = 0;
    for (name, r) in &pool {
        let rad = rad_gr_ring(r, &budget).unwrap();
        let mut all_checked = true;
        for d in r.layout().degrees() {
            match carac_component_oracle(r, d, &budget) {
                Ok(oracle) => {
                    let got =
                        rad.space.component(d).cloned().unwrap_or_else(|| {
                            Subspace::zero(r.field(), r.layout().component_dim(d))
                        });
                    assert_eq!(oracle, got, "{name}, degree {d}");
                }
                Err(Error::Budget(_)) => all_checked = false,
                Err(e) => panic!("{name}: {e}"),
            }
        }
        if all_checked {
            rings_fully_checked += 1;
        }
    }
    assert!(rings_fully_checked >= 20);
    pass(
        3,
        "quasi-regularity oracle matched the lattice radical degreewise on 20+ rings",
    );
}

#[test]
fn criterion_04_diagonal_law() {
    // rad^gr(R)_e = rad(R_e) for every object, with rad(R_e) computed by an
    // independent ungraded engine
    let budget = default_budget();
    let pool = ring_pool_with_quotients(0xD1A60);
    let mut objects_checked = 0;
    for (name, r) in &pool {
        let rad = rad_gr_ring(r, &budget).unwrap();
        for e in r.groupoid().objects() {
            let id = r.groupoid().identity(e);
            if r.layout().component_dim(id) == 0 {
                continue;
            }
            let (rad_e, _engine) = component_radical(r, e, &budget).unwrap();
            let got = rad
                .space
                .component(id)
                .cloned()
                .unwrap_or_else(|| Subspace::zero(r.field(), r.layout().component_dim(id)));
            assert_eq!(rad_e, got, "{name}, object {e}");
            objects_checked += 1;
        }
    }
    assert!(objects_checked > 20);
    pass(
        4,
        "diagonal law rad^gr(R)_e = rad(R_e) holds on every test object",
    );
}

#[test]
fn criterion_05_left_right_symmetry() {
    // rad^gr(R) and rad^gr(opposite(R)) correspond under degree reversal
    let budget = default_budget();
    for (name, r) in ring_pool_with_quotients(0x0BB0) {
        let rad = rad_gr_ring(&r, &budget).unwrap();
        let op = r.opposite().unwrap();
        let rad_op = rad_gr_ring(&op, &budget).unwrap();
        let g = r.groupoid();
        for d in g.morphisms() {
            let from_op = rad_op.space.component(d);
            let from_plain = rad.space.component(g.inverse(d));
            match (from_op, from_plain) {
                (None, None) => {}
                (Some(a), Some(b)) => assert_eq!(a, b, "{name}, degree {d}"),
                (a, b) => assert_eq!(
                    a.map_or(0, |s| s.dim()),
                    b.map_or(0, |s| s.dim()),
                    "{name}, degree {d}"
                ),
            }
        }
    }
    pass(
        5,
        "rad^gr of the opposite ring is the degree-reversed radical",
    );
}

#[test]
fn criterion_06_preradical_laws_on_random_modules() {
    let budget = default_budget();
    let pool = builder_pool();
    let mut rng = rng(0x5EED6);
    let mut count = 0;
    while count < 50 {
        let (_, r) = &pool[count % pool.len()];
        let j = rad_gr_ring(r, &budget).unwrap().space;
        let m = random_module(r, &mut rng, 12);
        let n = random_module(r, &mut rng, 12);
        let rad_m = rad_gr_module(&m, &j).unwrap();
        let soc_m = soc_gr_module(&m, &j).unwrap();
        let rad_n = rad_gr_module(&n, &j).unwrap();
        let soc_n = soc_gr_module(&n, &j).unwrap();

        // direct sums split
        let (sum, offsets) = GradedModule::direct_sum(&[&m, &n]).unwrap();
        let embed = |space: &HomogeneousSubspace, who: usize, src: &GradedModule| {
            let mut out = HomogeneousSubspace::zero();
            for row in space.global_rows(src.layout()) {
                let mut v = sum.zero_vec();
                for (i, &c) in row.iter().enumerate() {
                    v[offsets[who] + i] = c;
                }
                for (d, local) in sum.layout().split(&v) {
                    out.insert_vector(
                        sum.layout().field(),
                        sum.layout().component_dim(d),
                        d,
                        &local,
                    );
                }
            }
            out
        };
        let expected_rad = embed(&rad_m, 0, &m).sum(&embed(&rad_n, 1, &n)).unwrap();
        let expected_soc = embed(&soc_m, 0, &m).sum(&embed(&soc_n, 1, &n)).unwrap();
        assert_eq!(rad_gr_module(&sum, &j).unwrap(), expected_rad.normalize());
        assert_eq!(soc_gr_module(&sum, &j).unwrap(), expected_soc.normalize());

        // shift equivariance
        let g = r.groupoid();
        let sigma = (0..g.morphism_count())
            .find(|&s| m.gamma0_support().contains(&g.target(s)))
            .unwrap_or_else(|| g.identity(0));
        let (shifted, _) = m.shift(sigma).unwrap();
        let rad_shifted = rad_gr_module(&shifted, &j).unwrap();
        let shifted_rad = m.shift_subspace(&rad_m, sigma, &shifted).unwrap();
        assert_eq!(rad_shifted, shifted_rad.normalize());
        let soc_shifted = soc_gr_module(&shifted, &j).unwrap();
        let shifted_soc = m.shift_subspace(&soc_m, sigma, &shifted).unwrap();
        assert_eq!(soc_shifted, shifted_soc.normalize());

        // rad(M / rad M) = 0 and soc(soc M) = soc M
        let (q, _) = m.quotient(&rad_m).unwrap();
        assert!(rad_gr_module(&q, &j).unwrap().is_zero());
        let (soc_mod, _) = m.submodule_as_module(&soc_m).unwrap();
        assert_eq!(soc_gr_module(&soc_mod, &j).unwrap().dim(), soc_mod.dim());

        // graded Nakayama: MJ != M for finitely generated nonzero M
        if m.dim() > 0 {
            assert_ne!(rad_m.dim(), m.dim(), "MJ = M for nonzero M");
        }
        count += 1;
    }
    pass(
        6,
        "preradical laws held on 50 random modules (sums, shifts, idempotence)",
    );
}

#[test]
fn criterion_07_loewy_series_dual_computation() {
    // iterated-socle route equals the annihilator-of-J^n route step for step
    // (loewy_series fails internally otherwise)
    let budget = default_budget();
    let pool = builder_pool();
    let mut rng = rng(0x10E37);
    let mut count = 0;
    while count < 50 {
        let (_, r) = &pool[count % pool.len()];
        let j = rad_gr_ring(r, &budget).unwrap().space;
        let m = random_module(r, &mut rng, 12);
        let series = loewy_series(&m, &j).unwrap();
        assert_eq!(series.terms.last().unwrap().dim(), m.dim());
        count += 1;
    }
    pass(
        7,
        "both Loewy routes agreed step-for-step on 50 random modules",
    );
}

#[test]
fn criterion_08_jordan_holder_and_additivity() {
    let budget = default_budget();
    let pool = builder_pool();
    let mut rng = rng(0x1A11);
    let mut count = 0;
    let mut additivity_checks = 0;
    while count < 50 {
        let (_, r) = &pool[count % pool.len()];
        let j = rad_gr_ring(r, &budget).unwrap().space;
        let m = random_module(r, &mut rng, 12);
        let s1 = composition_series(&m, &j, 0, &budget).unwrap();
        let s2 = composition_series(&m, &j, count as u64 + 1, &budget).unwrap();
        assert!(
            jordan_holder_equivalent(&s1, &s2).unwrap(),
            "series with different seeds must be gr-equivalent"
        );
        // additivity over the full lattice of small modules
        let small_budget = Budget {
            enum_limit: 1 << 10,
            lattice_limit: 256,
        };
        if let Ok(lattice) = submodule_lattice(&m, &small_budget) {
            let total = s1.length();
            for n in &lattice {
                let (nm, _) = m.submodule_as_module(n).unwrap();
                let (qm, _) = m.quotient(n).unwrap();
                let ln = gr_length(&nm, &j, &budget).unwrap();
                let lq = gr_length(&qm, &j, &budget).unwrap();
                assert_eq!(ln + lq, total, "c_gr additivity");
                additivity_checks += 1;
            }
        }
        count += 1;
    }
    assert!(additivity_checks > 50);
    pass(
        8,
        "Jordan-Holder equivalence across seeds and gr-length additivity held",
    );
}

#[test]
fn criterion_09_semisimplicity_equivalences() {
    let budget = default_budget();
    for (name, r) in ring_pool_with_quotients(0x55) {
        let rad = rad_gr_ring(&r, &budget).unwrap();
        let ss = is_gr_semisimple(&r, &budget).unwrap();
        assert_eq!(ss, rad.space.is_zero(), "{name}");
        // soc = R is the other characterization of gr-semisimplicity
        let soc = soc_gr_ring(&r, &budget).unwrap();
        assert_eq!(ss, soc.space.dim() == r.dim(), "{name}");
        // gr-semilocal: quotient route vs per-object route (asserted to agree
        // inside; both are true at finite dimension)
        let sl = is_gr_semilocal(&r, &budget).unwrap();
        assert!(sl.gr_semilocal, "{name}");
        assert_eq!(sl.via_quotient, sl.via_components, "{name}");
    }
    pass(
        9,
        "gr-semisimple <=> rad = 0 <=> soc = R; semilocal routes agreed",
    );
}

#[test]
fn criterion_10_fitting_decompositions() {
    let budget = default_budget();
    let pool = builder_pool();
    let mut rng = rng(0xF177);
    let mut decompositions = 0;
    let mut invertibility_certificates = 0;
    let mut tries = 0;
    while decompositions < 30 && tries < 400 {
        tries += 1;
        let (_, r) = &pool[tries % pool.len()];
        let m = random_module(r, &mut rng, 10);
        if m.dim() == 0 {
            continue;
        }
        let Some((g, gamma)) = random_loop_endomorphism(&m, &mut rng) else {
            continue;
        };
        let rep = fitting(&m, &g, gamma).unwrap();
        assert!(rep.direct_sum_ok, "M = ker g^n (+) im g^n");
        assert!(rep.kernel_stable, "g(ker g^n) inside ker g^n");
        assert!(rep.bijective_on_image, "g bijective on im g^n");
        decompositions += 1;
        // injective or surjective on M(e) must certify gr-invertibility;
        // derive the hypothesis independently of the fitting report
        let grp = m.ring().groupoid().clone();
        let e = grp.target(gamma);
        let me_rows = m.component_submodule(e).global_rows(m.layout());
        let me_space = Subspace::from_rows(m.ring().field(), m.dim(), me_rows);
        let injective_on_e = g
            .transpose()
            .kernel()
            .intersect(&me_space)
            .unwrap()
            .is_zero();
        let surjective_on_e = g.row_space() == me_space;
        if injective_on_e || surjective_on_e {
            assert!(
                rep.gr_inverse.is_some(),
                "injective/surjective g must be gr-invertible"
            );
            invertibility_certificates += 1;
        }
        let _ = budget;
    }
    assert!(decompositions >= 30);
    assert!(invertibility_certificates > 0);
    pass(
        10,
        "30+ Fitting decompositions verified; invertibility certified where due",
    );
}

#[test]
fn criterion_11_superfluous_essential_oracle() {
    let budget = default_budget();
    let pool = builder_pool();
    let mut rng = rng(0x5E55);
    let mut oracle_confirmed = 0;
    let mut count = 0;
    while count < 40 {
        let (_, r) = &pool[count % pool.len()];
        let j = rad_gr_ring(r, &budget).unwrap().space;
        let m = random_module(r, &mut rng, 8);
        let n = random_submodule(&m, &mut rng);
        let rad_m = rad_gr_module(&m, &j).unwrap();
        let soc_m = soc_gr_module(&m, &j).unwrap();
        // the predicates fail internally if fast path and oracle disagree
        let sup = is_gr_superfluous(&m, &n, &rad_m, &budget).unwrap();
        let ess = is_gr_essential(&m, &n, &soc_m, &budget).unwrap();
        if sup.oracle_checked && ess.oracle_checked {
            oracle_confirmed += 1;
        }
        count += 1;
    }
    assert!(oracle_confirmed >= 30);
    pass(
        11,
        "superfluous/essential fast paths matched literal lattice quantification",
    );
}

#[test]
fn criterion_12_baer_test() {
    let budget = default_budget();
    // rejection with witness ideal (x)
    let a = truncated_polynomial_algebra(2, 2).unwrap();
    let m = GradedModule::regular(a.clone());
    let x = {
        let mut v = m.zero_vec();
        let i = (0..m.dim()).find(|&i| m.basis()[i].name == "x").unwrap();
        v[i] = 1;
        v
    };
    let ideal = m.spin(&[x]).unwrap();
    let (e, _) = m.quotient(&ideal).unwrap();
    let rep = baer_gr_injective(&e, &budget).unwrap();
    assert!(!rep.injective);
    assert_eq!(rep.witness.as_ref().unwrap().0, ideal);

    // acceptance over gr-semisimple rings, 10 random modules each
    let mut rng = rng(0xBAE5);
    let mut accepted = 0;
    for (name, r) in builder_pool() {
        if !is_gr_semisimple(&r, &budget).unwrap() {
            continue;
        }
        for _ in 0..10 {
            let m = random_module(&r, &mut rng, 8);
            let rep = baer_gr_injective(&m, &budget).unwrap();
            assert!(rep.injective, "{name}: module must be gr-injective");
            accepted += 1;
        }
    }
    assert!(accepted >= 30);
    pass(
        12,
        "Baer rejected R/(x) over F_2[x]/(x^2) with witness (x); semisimple cases accepted",
    );
}

#[test]
fn criterion_13_chain_condition_counterexamples() {
    let flags = CoefficientFlags::finite_dimensional();
    // well-ordered index sets: right noetherian and left artinian
    for spec in [
        PosetSpec::Ordinal {
            k: 1,
            m: 0,
            reversed: false,
        },
        PosetSpec::Ordinal {
            k: 1,
            m: 1,
            reversed: false,
        },
        PosetSpec::Ordinal {
            k: 2,
            m: 3,
            reversed: false,
        },
    ] {
        let v = classify_ut(&spec, flags).unwrap();
        assert!(v.right_gamma0_noetherian && v.left_gamma0_artinian);
    }
    // beyond w: neither right artinian nor left noetherian
    let omega_plus = PosetSpec::Ordinal {
        k: 1,
        m: 1,
        reversed: false,
    };
    let v = classify_ut(&omega_plus, flags).unwrap();
    assert!(!v.right_gamma0_artinian && !v.left_gamma0_noetherian);
    // the naturals: left noetherian, not right artinian
    let naturals = PosetSpec::Ordinal {
        k: 1,
        m: 0,
        reversed: false,
    };
    let v = classify_ut(&naturals, flags).unwrap();
    assert!(v.left_gamma0_noetherian && !v.right_gamma0_artinian);
    // a left artinian coefficient ring over an ordinal beyond w gives a
    // left gamma0-artinian ring that is not left gamma0-noetherian
    let left_artinian = CoefficientFlags {
        right_artinian: false,
        right_noetherian: false,
        left_artinian: true,
        left_noetherian: true,
    };
    let v = classify_ut(&omega_plus, left_artinian).unwrap();
    assert!(v.left_gamma0_artinian && !v.left_gamma0_noetherian);
    // the reversed ordinal swaps the failure to the right side
    let reversed = PosetSpec::Ordinal {
        k: 1,
        m: 1,
        reversed: true,
    };
    let right_artinian = CoefficientFlags {
        right_artinian: true,
        right_noetherian: true,
        left_artinian: false,
        left_noetherian: false,
    };
    let v = classify_ut(&reversed, right_artinian).unwrap();
    assert!(v.right_gamma0_artinian && !v.right_gamma0_noetherian);

    // length-10 witness chains pass strictness certification on truncations
    let w = witness_chain(&naturals, ChainShape::AscendingAbove, 10).unwrap();
    assert!(w.certified && w.descriptors.len() == 10);
    let w = witness_chain(&omega_plus, ChainShape::AscendingBelow, 10).unwrap();
    assert!(w.certified && w.descriptors.len() == 10);
    let w = witness_chain(&reversed, ChainShape::DescendingAbove, 10).unwrap();
    assert!(w.certified);
    pass(
        13,
        "UT(D) verdict table reproduced; length-10 witnesses certified strict",
    );
}

#[test]
fn criterion_14_strong_gamma0_profiles() {
    // the direct-sum-of-division-rings family: constant component length 1
    // over infinite support
    let v = strong_classify(&FamilyProfile::Constant {
        value: 1,
        infinite_support: true,
    })
    .unwrap();
    assert!(v.strongly_gamma0_artinian && v.strongly_gamma0_noetherian);
    assert!(!v.gr_artinian && !v.gr_noetherian);
    // the ramp family: component at index n has gr-length n
    let v = strong_classify(&FamilyProfile::Ramp).unwrap();
    assert!(v.gamma0_artinian && v.gamma0_noetherian);
    assert!(!v.strongly_gamma0_artinian && !v.strongly_gamma0_noetherian);
    pass(
        14,
        "strong-condition verdicts match both reference profiles",
    );
}

#[test]
fn criterion_15_projective_category_radical() {
    // R_C over {A, A^2}, A = F_5[x]/(x^2): every radical component equals
    // {g : im g inside rad(codomain)}; the big component needs a raised
    // enumeration budget for the lattice oracle
    let budget = Budget {
        enum_limit: 1 << 17,
        lattice_limit: 1 << 16,
    };
    let a = truncated_polynomial_algebra(5, 2).unwrap();
    let regular = AlgebraModule::regular(&a);
    let square = regular.power(2, a.field());
    let cat = build_category_ring(&a, &[regular.clone(), square]).unwrap();
    assert_eq!(cat.ring.dim(), 18);
    assert!(projective_category_radical_check(&cat, &budget).unwrap());
    // the {A} case: radical component is x*End(A), dimension 1
    let cat1 = build_category_ring(&a, &[regular]).unwrap();
    let rad1 = rad_gr_ring(&cat1.ring, &default_budget()).unwrap();
    assert_eq!(rad1.space.dim(), 1);
    assert!(projective_category_radical_check(&cat1, &default_budget()).unwrap());
    pass(
        15,
        "rad(R_C) components equal {g : im g in rad(codomain)} on {A, A^2}",
    );
}

#[test]
fn criterion_16_dedekind_finiteness_counterexample() {
    let budget = default_budget();
    for p in [2u32, 5] {
        let r = blocked_matrix_ring(p, &[2, 1]).unwrap();
        assert!(
            is_gr_semisimple(&r, &budget).unwrap(),
            "the example ring is gr-semisimple"
        );
        let (gamma, a, b) = find_gr_dedekind_violation(&r, &budget)
            .unwrap()
            .expect("exhaustive search must find the pair");
        let g = r.groupoid();
        assert_ne!(
            g.source(gamma),
            g.target(gamma),
            "pair lives off the diagonal"
        );
        assert_eq!(r.mul(&a, &b), r.unit(g.target(gamma)).to_vec());
        assert_ne!(r.mul(&b, &a), r.unit(g.source(gamma)).to_vec());
    }
    pass(
        16,
        "gr-semisimple blocked M_3 admits ab = 1_(2,2) with ba != 1_(1,1)",
    );
}

// supporting sanity check: the identity on a one-object-supported module is
// gr-invertible through the Fitting certificate
#[test]
fn fitting_hypothesis_cases_present() {
    let a = field_algebra(3).unwrap();
    let r = build_ut(&a, &Poset::chain(2)).unwrap();
    let reg = GradedModule::regular(r.clone());
    let (m, _) = reg
        .submodule_as_module(&reg.component_submodule(0))
        .unwrap();
    let f = r.field();
    let id = grgrad_core::exactla::Matrix::identity(f, m.dim());
    let e = r.groupoid().identity(0);
    let rep = fitting(&m, &id, e).unwrap();
    assert!(rep.gr_inverse.is_some());
}

// keep Arc in the prelude used
#[allow(dead_code)]
fn _types(_: Arc<GradedRing>) {}
