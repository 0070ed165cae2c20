//! Shared generators for the integration suites: the ring pool (every
//! builder plus graded quotients) and random-but-validated graded modules.

#![allow(dead_code)]

use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use grgrad_core::exactla::Matrix;
use grgrad_core::module::{hom_gamma, GradedModule};
use grgrad_core::poset::Poset;
use grgrad_core::ring::{
    blocked_matrix_ring, build_category_ring, build_pair_matrix_ring, build_ut,
    cyclic_group_algebra, field_algebra, matrix_algebra, truncated_polynomial_algebra,
    AlgebraModule, GradedRing, HomogeneousSubspace,
};
use grgrad_core::Budget;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Simple quotient A/(x) of a truncated polynomial algebra.
pub fn simple_quotient_module(a: &Arc<GradedRing>) -> AlgebraModule {
    let f = a.field();
    let mut action = Vec::new();
    for i in 0..a.dim() {
        if a.basis_name(i) == "1" {
            action.push(Matrix::identity(f, 1));
        } else {
            action.push(Matrix::zeros(f, 1, 1));
        }
    }
    let m = AlgebraModule {
        name: "A/x".into(),
        dim: 1,
        action,
    };
    m.validate(a).expect("A/x is a valid module");
    m
}

/// Every builder output the suites analyze, with a short label.
pub fn builder_pool() -> Vec<(String, Arc<GradedRing>)> {
    let mut pool: Vec<(String, Arc<GradedRing>)> = Vec::new();
    let f2 = field_algebra(2).unwrap();
    let f3 = field_algebra(3).unwrap();
    let f5 = field_algebra(5).unwrap();
    let dual2_f2 = truncated_polynomial_algebra(2, 2).unwrap();
    let dual2_f5 = truncated_polynomial_algebra(5, 2).unwrap();
    let dual3_f3 = truncated_polynomial_algebra(3, 3).unwrap();

    pool.push(("F_2".into(), f2.clone()));
    pool.push(("F_5".into(), f5.clone()));
    pool.push(("F_2[x]/(x^2)".into(), dual2_f2.clone()));
    pool.push(("F_5[x]/(x^2)".into(), dual2_f5.clone()));
    pool.push(("F_3[x]/(x^3)".into(), dual3_f3.clone()));
    pool.push(("M_2(F_3) as algebra".into(), matrix_algebra(3, 2).unwrap()));
    pool.push(("M_2(F_2)".into(), build_pair_matrix_ring(&f2, 2).unwrap()));
    pool.push(("M_3(F_2)".into(), build_pair_matrix_ring(&f2, 3).unwrap()));
    pool.push((
        "M_2(F_5[x]/(x^2))".into(),
        build_pair_matrix_ring(&dual2_f5, 2).unwrap(),
    ));
    pool.push((
        "UT(F_2, 1<2)".into(),
        build_ut(&f2, &Poset::chain(2)).unwrap(),
    ));
    pool.push((
        "UT(F_2, 1<2<3)".into(),
        build_ut(&f2, &Poset::chain(3)).unwrap(),
    ));
    pool.push((
        "UT(F_3, 1<2<3)".into(),
        build_ut(&f3, &Poset::chain(3)).unwrap(),
    ));
    pool.push((
        "UT(F_5, 1<2<3<4)".into(),
        build_ut(&f5, &Poset::chain(4)).unwrap(),
    ));
    pool.push((
        "UT(F_2, antichain 2)".into(),
        build_ut(&f2, &Poset::antichain(2)).unwrap(),
    ));
    pool.push((
        "UT(F_2, vee poset)".into(),
        build_ut(&f2, &Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap()).unwrap(),
    ));
    pool.push((
        "UT(F_2[x]/(x^2), 1<2)".into(),
        build_ut(&dual2_f2, &Poset::chain(2)).unwrap(),
    ));
    pool.push((
        "category {A} over F_5[x]/(x^2)".into(),
        build_category_ring(&dual2_f5, &[AlgebraModule::regular(&dual2_f5)])
            .unwrap()
            .ring,
    ));
    pool.push((
        "category {A, A/x} over F_5[x]/(x^2)".into(),
        build_category_ring(
            &dual2_f5,
            &[
                AlgebraModule::regular(&dual2_f5),
                simple_quotient_module(&dual2_f5),
            ],
        )
        .unwrap()
        .ring,
    ));
    pool.push((
        "blocked M_3(F_2) {2,1}".into(),
        blocked_matrix_ring(2, &[2, 1]).unwrap(),
    ));
    pool.push((
        "F_2[Z/2] group graded".into(),
        cyclic_group_algebra(2, 2).unwrap(),
    ));
    pool.push((
        "F_3[Z/3] group graded".into(),
        cyclic_group_algebra(3, 3).unwrap(),
    ));
    pool
}

/// A random homogeneous element of the ring (possibly zero).
pub fn random_homogeneous_ring_element(r: &GradedRing, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let degrees: Vec<_> = r.layout().degrees().collect();
    let d = degrees[rng.gen_range(0..degrees.len())];
    let mut v = r.zero_vec();
    for &i in r.layout().indices(d) {
        v[i] = rng.gen_range(0..r.field().p());
    }
    v
}

/// The builder pool extended with random graded quotients of each member.
pub fn ring_pool_with_quotients(seed: u64) -> Vec<(String, Arc<GradedRing>)> {
    let mut rng = rng(seed);
    let mut pool = builder_pool();
    let mut quotients = Vec::new();
    for (name, r) in &pool {
        let gens: Vec<Vec<u32>> = (0..2)
            .map(|_| random_homogeneous_ring_element(r, &mut rng))
            .collect();
        let ideal = r.two_sided_ideal(&gens).unwrap();
        if ideal.dim() == 0 || ideal.dim() == r.dim() {
            continue;
        }
        let (q, _) = r.quotient(&ideal).unwrap();
        quotients.push((format!("{name} / random ideal"), q));
    }
    pool.extend(quotients);
    pool
}

/// A random homogeneous module vector (possibly zero).
pub fn random_homogeneous_vector(m: &GradedModule, rng: &mut ChaCha8Rng) -> Option<Vec<u32>> {
    let degrees: Vec<_> = m.layout().degrees().collect();
    if degrees.is_empty() {
        return None;
    }
    let d = degrees[rng.gen_range(0..degrees.len())];
    let mut local = vec![0u32; m.layout().component_dim(d)];
    for x in &mut local {
        *x = rng.gen_range(0..m.ring().field().p());
    }
    Some(m.layout().local_to_global(d, &local))
}

/// Builds a random module over the given ring by composing shifts, direct
/// sums, submodules and quotients of the regular module; always validated.
pub fn random_module(r: &Arc<GradedRing>, rng: &mut ChaCha8Rng, max_dim: usize) -> GradedModule {
    let mut m = GradedModule::regular(r.clone());
    for _ in 0..3 {
        match rng.gen_range(0..5) {
            0 => {
                // shift by a random morphism
                let g = r.groupoid();
                let count = g.morphism_count();
                let sigma = rng.gen_range(0..count);
                let (sh, _) = m.shift(sigma).unwrap();
                if sh.dim() > 0 {
                    m = sh;
                }
            }
            1 => {
                // spin a random submodule and continue inside it
                if let Some(v) = random_homogeneous_vector(&m, rng) {
                    let s = m.spin(&[v]).unwrap();
                    if s.dim() > 0 {
                        let (sub, _) = m.submodule_as_module(&s).unwrap();
                        m = sub;
                    }
                }
            }
            2 => {
                // quotient by a random proper submodule
                if let Some(v) = random_homogeneous_vector(&m, rng) {
                    let s = m.spin(&[v]).unwrap();
                    if s.dim() < m.dim() {
                        let (q, _) = m.quotient(&s).unwrap();
                        m = q;
                    }
                }
            }
            3 => {
                // double up if there is room
                if m.dim() > 0 && 2 * m.dim() <= max_dim {
                    let (sum, _) = GradedModule::direct_sum(&[&m, &m]).unwrap();
                    m = sum;
                }
            }
            _ => {
                // component of a random object
                let objs = m.gamma0_support();
                if !objs.is_empty() {
                    let e = objs[rng.gen_range(0..objs.len())];
                    let c = m.component_submodule(e);
                    if c.dim() > 0 {
                        let (sub, _) = m.submodule_as_module(&c).unwrap();
                        m = sub;
                    }
                }
            }
        }
        if m.dim() == 0 {
            m = GradedModule::regular(r.clone());
        }
    }
    while m.dim() > max_dim {
        // shrink: take a proper cyclic submodule if possible, else restart
        let v = random_homogeneous_vector(&m, rng);
        let s = v.map(|v| m.spin(&[v]).unwrap());
        match s {
            Some(s) if s.dim() > 0 && s.dim() < m.dim() => {
                let (sub, _) = m.submodule_as_module(&s).unwrap();
                m = sub;
            }
            _ => {
                let e = m.gamma0_support()[0];
                let (sub, _) = m.submodule_as_module(&m.component_submodule(e)).unwrap();
                if sub.dim() == m.dim() {
                    break;
                }
                m = sub;
            }
        }
    }
    assert!(m.validate().is_empty(), "random module must validate");
    m
}

/// A random degree-e endomorphism (e a random object of the module support),
/// as a combination of a hom-space basis. Returns (matrix, loop degree).
pub fn random_loop_endomorphism(m: &GradedModule, rng: &mut ChaCha8Rng) -> Option<(Matrix, usize)> {
    let g = m.ring().groupoid().clone();
    let objs = m.gamma0_support();
    if objs.is_empty() {
        return None;
    }
    let e = objs[rng.gen_range(0..objs.len())];
    let gamma = g.identity(e);
    let homs = hom_gamma(m, m, gamma).ok()?;
    if homs.is_empty() {
        return None;
    }
    let f = m.ring().field();
    let mut acc = Matrix::zeros(f, m.dim(), m.dim());
    for h in &homs {
        let c = rng.gen_range(0..f.p());
        if c != 0 {
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    let v = f.add(acc.get(i, j), f.mul(c, h.get(i, j)));
                    acc.set(i, j, v);
                }
            }
        }
    }
    Some((acc, gamma))
}

/// Random graded submodule via spinning a couple of homogeneous vectors.
pub fn random_submodule(m: &GradedModule, rng: &mut ChaCha8Rng) -> HomogeneousSubspace {
    let mut gens = Vec::new();
    for _ in 0..rng.gen_range(1..3) {
        if let Some(v) = random_homogeneous_vector(m, rng) {
            gens.push(v);
        }
    }
    m.spin(&gens).unwrap()
}

pub fn default_budget() -> Budget {
    Budget::default()
}
