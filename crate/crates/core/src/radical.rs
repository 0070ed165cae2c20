//! Graded Jacobson radical and gr-socle engines.
//!
//! Three mutually-checking routes: the submodule-lattice oracle (exhaustive
//! spinning, the reference engine), the component quasi-regularity oracle
//! (right invertibility of 1_e - ax), and the trace-form criterion for
//! diagonal algebras when p exceeds the algebra dimension. Module-level
//! radicals and socles come from M*J and the annihilator of J once the ring
//! radical J is known.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::exactla::{Echelon, Matrix, ProjectivePoints, Subspace};
use crate::groupoid::{MorId, ObjId};
use crate::module::GradedModule;
use crate::ring::{GradedRing, HomogeneousSubspace};
use crate::{Budget, Error, Result};

/// Result of a radical or socle computation on a ring.
#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub space: HomogeneousSubspace,
    pub engine: &'static str,
    /// (degree, dimension) for every nonzero component
    pub per_degree: Vec<(MorId, usize)>,
    pub two_sided_checked: bool,
}

impl RadicalReport {
    fn new(r: &GradedRing, space: HomogeneousSubspace, engine: &'static str) -> RadicalReport {
        let per_degree = space
            .components()
            .filter(|(_, s)| !s.is_zero())
            .map(|(d, s)| (d, s.dim()))
            .collect();
        let two_sided_checked = r.is_two_sided_ideal(&space);
        RadicalReport {
            space,
            engine,
            per_degree,
            two_sided_checked,
        }
    }
}

/// Precomputed local action data for spinning many vectors of one module:
/// for each present degree, the ring basis moves that stay inside the module,
/// as small local matrices.
pub struct SpinContext<'a> {
    m: &'a GradedModule,
    slot_of: Vec<Option<usize>>,
    degrees: Vec<MorId>,
    /// moves[slot] = (target slot, rows[source local] = target local coeffs)
    moves: Vec<Vec<(usize, Vec<Vec<u32>>)>>,
}

impl<'a> SpinContext<'a> {
    pub fn new(m: &'a GradedModule) -> SpinContext<'a> {
        let g = m.ring().groupoid();
        let degrees: Vec<MorId> = m.layout().degrees().collect();
        let mut slot_of = vec![None; g.morphism_count()];
        for (s, &d) in degrees.iter().enumerate() {
            slot_of[d] = Some(s);
        }
        let mut moves = Vec::with_capacity(degrees.len());
        for &d in &degrees {
            let src = m.layout().indices(d);
            let mut dm = Vec::new();
            for r in 0..m.ring().dim() {
                let Some(t) = g.compose(d, m.ring().degree_of_basis(r)) else {
                    continue;
                };
                let Some(tslot) = slot_of[t] else { continue };
                let tgt = m.layout().indices(t);
                let mut rows = Vec::with_capacity(src.len());
                let mut all_zero = true;
                for &i in src {
                    let act = m.basis_action(i, r);
                    let row: Vec<u32> = tgt.iter().map(|&j| act[j]).collect();
                    if row.iter().any(|&x| x != 0) {
                        all_zero = false;
                    }
                    rows.push(row);
                }
                if !all_zero {
                    dm.push((tslot, rows));
                }
            }
            moves.push(dm);
        }
        SpinContext {
            m,
            slot_of,
            degrees,
            moves,
        }
    }

    /// Cyclic closure of one homogeneous vector given in local coordinates.
    pub fn spin_local(&self, degree: MorId, local: &[u32]) -> HomogeneousSubspace {
        let f = self.m.layout().field();
        let p = f.p() as u64;
        let mut echelons: Vec<Echelon> = self
            .degrees
            .iter()
            .map(|&d| Echelon::new(f, self.m.layout().component_dim(d)))
            .collect();
        let slot = self.slot_of[degree].expect("degree present in the module");
        let mut work: Vec<(usize, Vec<u32>)> = Vec::new();
        if echelons[slot].insert(local) {
            work.push((slot, local.to_vec()));
        }
        while let Some((s, v)) = work.pop() {
            for (tslot, rows) in &self.moves[s] {
                let tdim = rows.first().map_or(0, |r| r.len());
                let mut acc = vec![0u64; tdim];
                for (k, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let row = &rows[k];
                    for (a, &x) in acc.iter_mut().zip(row) {
                        *a += c as u64 * x as u64;
                    }
                }
                let w: Vec<u32> = acc.iter().map(|&a| (a % p) as u32).collect();
                if w.iter().all(|&x| x == 0) {
                    continue;
                }
                if echelons[*tslot].insert(&w) {
                    work.push((*tslot, w));
                }
            }
        }
        let mut out = HomogeneousSubspace::zero();
        for (s, ech) in echelons.into_iter().enumerate() {
            let d = self.degrees[s];
            for row in ech.rows() {
                out.insert_vector(f, self.m.layout().component_dim(d), d, row);
            }
        }
        out.normalize()
    }
}

/// Every graded submodule of M: spins of all homogeneous vectors (up to
/// scalars), closed under pairwise sums. Includes 0 and M.
pub fn submodule_lattice(m: &GradedModule, budget: &Budget) -> Result<Vec<HomogeneousSubspace>> {
    let vectors = m.projective_vectors_of(&m.full_subspace(), budget)?;
    let ctx = SpinContext::new(m);
    let mut set: BTreeSet<HomogeneousSubspace> = BTreeSet::new();
    set.insert(HomogeneousSubspace::zero());
    for (d, local) in vectors {
        let s = ctx.spin_local(d, &local);
        set.insert(s);
        if set.len() > budget.lattice_limit {
            return Err(Error::budget("submodule lattice exceeds size cap"));
        }
    }
    // close under sums to a fixpoint
    let mut items: Vec<HomogeneousSubspace> = set.iter().cloned().collect();
    let mut frontier = items.clone();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for a in &frontier {
            for b in &items {
                let s = a.sum(b)?;
                if !set.contains(&s) {
                    set.insert(s.clone());
                    fresh.push(s);
                    if set.len() > budget.lattice_limit {
                        return Err(Error::budget("submodule lattice exceeds size cap"));
                    }
                }
            }
        }
        items.extend(fresh.iter().cloned());
        frontier = fresh;
    }
    Ok(set.into_iter().collect())
}

/// Intersection of the maximal proper elements of a submodule lattice; the
/// whole module when there is none (only for the zero module here).
pub fn radical_from_lattice(
    m: &GradedModule,
    lattice: &[HomogeneousSubspace],
) -> Result<HomogeneousSubspace> {
    let full = m.full_subspace();
    let proper: Vec<&HomogeneousSubspace> = lattice.iter().filter(|s| **s != full).collect();
    let maximal: Vec<&HomogeneousSubspace> = proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| *t != **s && t.contains(s) && !s.contains(t))
        })
        .copied()
        .collect();
    if maximal.is_empty() {
        return Ok(full);
    }
    let mut acc = maximal[0].clone();
    for s in &maximal[1..] {
        acc = acc.intersect(s)?;
    }
    Ok(acc)
}

/// Sum of the minimal nonzero elements of a submodule lattice.
pub fn socle_from_lattice(
    _m: &GradedModule,
    lattice: &[HomogeneousSubspace],
) -> Result<HomogeneousSubspace> {
    let nonzero: Vec<&HomogeneousSubspace> = lattice.iter().filter(|s| !s.is_zero()).collect();
    let minimal: Vec<&HomogeneousSubspace> = nonzero
        .iter()
        .filter(|s| {
            !nonzero
                .iter()
                .any(|t| *t != **s && s.contains(t) && !t.contains(s))
        })
        .copied()
        .collect();
    let mut acc = HomogeneousSubspace::zero();
    for s in minimal {
        acc = acc.sum(s)?;
    }
    Ok(acc)
}

/// rad of a module by the lattice oracle, assembled per carrier object
/// (rad(M) is the direct sum of the rad(M(e))).
pub fn rad_gr_module_lattice(m: &GradedModule, budget: &Budget) -> Result<HomogeneousSubspace> {
    per_object_lattice(m, budget, radical_from_lattice)
}

/// soc of a module by the lattice oracle, assembled per carrier object.
pub fn soc_gr_module_lattice(m: &GradedModule, budget: &Budget) -> Result<HomogeneousSubspace> {
    per_object_lattice(m, budget, socle_from_lattice)
}

fn per_object_lattice(
    m: &GradedModule,
    budget: &Budget,
    extract: impl Fn(&GradedModule, &[HomogeneousSubspace]) -> Result<HomogeneousSubspace>,
) -> Result<HomogeneousSubspace> {
    let mut out = HomogeneousSubspace::zero();
    for e in m.gamma0_support() {
        let comp = m.component_submodule(e);
        let (cm, lift) = m.submodule_as_module(&comp)?;
        let lattice = submodule_lattice(&cm, budget)?;
        let part = extract(&cm, &lattice)?;
        for row in part.global_rows(cm.layout()) {
            let v = lift.apply_row(&row)?;
            for (d, local) in m.layout().split(&v) {
                out.insert_vector(m.layout().field(), m.layout().component_dim(d), d, &local);
            }
        }
    }
    Ok(out.normalize())
}

/// Graded Jacobson radical of a ring by the lattice oracle on each R(e).
/// Verifies two-sidedness of the assembled ideal.
pub fn rad_gr_ring(r: &Arc<GradedRing>, budget: &Budget) -> Result<RadicalReport> {
    let m = GradedModule::regular(r.clone());
    let space = rad_gr_module_lattice(&m, budget)?;
    let report = RadicalReport::new(r, space, "lattice-oracle");
    if !report.two_sided_checked {
        return Err(Error::internal("computed radical is not a two-sided ideal"));
    }
    Ok(report)
}

/// Gr-socle of a ring by the lattice oracle on each R(e). Like the radical,
/// the result must come out two-sided.
pub fn soc_gr_ring(r: &Arc<GradedRing>, budget: &Budget) -> Result<RadicalReport> {
    let m = GradedModule::regular(r.clone());
    let space = soc_gr_module_lattice(&m, budget)?;
    let report = RadicalReport::new(r, space, "lattice-oracle");
    if !report.two_sided_checked {
        return Err(Error::internal("computed socle is not a two-sided ideal"));
    }
    Ok(report)
}

/// The component set {a in R_gamma : 1_{r(gamma)} - a x is right invertible
/// in R_{r(gamma)} for all x in R_{gamma^{-1}}}, by exhaustive enumeration.
/// Returns it as a subspace in the local coordinates of R_gamma, failing
/// internally if the collected set is not one.
pub fn carac_component_oracle(r: &GradedRing, gamma: MorId, budget: &Budget) -> Result<Subspace> {
    let f = r.field();
    let g = r.groupoid();
    let comp_dim = r.layout().component_dim(gamma);
    let gamma_inv = g.inverse(gamma);
    let inv_dim = r.layout().component_dim(gamma_inv);
    let e = g.target(gamma);
    let pairs = ProjectivePoints::count(f, comp_dim)
        .saturating_mul((f.p() as u64).saturating_pow(inv_dim as u32));
    if pairs > budget.enum_limit {
        return Err(Error::budget(format!(
            "quasi-regularity enumeration of {pairs} pairs exceeds the budget of {}",
            budget.enum_limit
        )));
    }
    let unit = r.unit(e).to_vec();
    let e_idxs = r.layout().indices(g.identity(e)).to_vec();
    let unit_local: Vec<u32> = e_idxs.iter().map(|&i| unit[i]).collect();
    let x_space = Subspace::full(f, inv_dim);
    let x_budget = Budget {
        enum_limit: u64::MAX,
        ..*budget
    };
    let xs = x_space.enumerate(&x_budget)?;
    let mut qualifying = Vec::new();
    for a_local in ProjectivePoints::new(f, comp_dim) {
        let a = r.layout().local_to_global(gamma, &a_local);
        let mut ok = true;
        for x_local in &xs {
            let x = r.layout().local_to_global(gamma_inv, x_local);
            let ax = r.mul(&a, &x);
            // u = 1_e - ax, supported on degree e
            let mut u = unit.clone();
            for (ui, &axi) in u.iter_mut().zip(&ax) {
                *ui = f.sub(*ui, axi);
            }
            if !right_invertible_in_component(r, &u, e, &e_idxs, &unit_local)? {
                ok = false;
                break;
            }
        }
        if ok {
            qualifying.push(a_local);
        }
    }
    let space = Subspace::from_rows(f, comp_dim, qualifying.clone());
    let expect = ProjectivePoints::count(f, space.dim());
    if qualifying.len() as u64 != expect {
        return Err(Error::internal(
            "quasi-regular set is not a linear subspace",
        ));
    }
    Ok(space)
}

/// Solves u * w = 1_e with w in R_e.
fn right_invertible_in_component(
    r: &GradedRing,
    u: &[u32],
    _e: ObjId,
    e_idxs: &[usize],
    unit_local: &[u32],
) -> Result<bool> {
    let f = r.field();
    let mut cols = Vec::with_capacity(e_idxs.len());
    for &k in e_idxs {
        let mut b = r.zero_vec();
        b[k] = 1;
        let ub = r.mul(u, &b);
        cols.push(e_idxs.iter().map(|&i| ub[i]).collect::<Vec<u32>>());
    }
    // rows of the system: one per component coordinate
    let n = e_idxs.len();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        rows.push((0..n).map(|j| cols[j][i]).collect::<Vec<u32>>());
    }
    let m = Matrix::from_rows(f, rows, n)?;
    Ok(m.solve(unit_local)?.is_some())
}

/// Dickson trace-form radical of a one-object algebra: the kernel of the
/// bilinear form (x, y) -> trace(L_{xy}). Requires p > dim(A).
pub fn trace_form_radical(a: &GradedRing) -> Result<Subspace> {
    if a.groupoid().object_count() != 1 {
        return Err(Error::input(
            "trace-form radical needs a one-object algebra",
        ));
    }
    let f = a.field();
    let dim = a.dim();
    if f.p() as usize <= dim {
        return Err(Error::input(format!(
            "trace criterion needs p > dim (p = {}, dim = {dim}); use an oracle engine",
            f.p()
        )));
    }
    // G[i][j] = trace of left multiplication by b_i * b_j
    let mut gram = Matrix::zeros(f, dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let z = a.basis_product(i, j);
            let mut tr = 0u32;
            for k in 0..dim {
                let mut b = a.zero_vec();
                b[k] = 1;
                let zb = a.mul(z, &b);
                tr = f.add(tr, zb[k]);
            }
            gram.set(i, j, tr);
        }
    }
    // {x : x G = 0}
    Ok(gram.transpose().kernel())
}

/// Exhaustive quasi-regularity radical of a one-object algebra.
pub fn quasi_regularity_radical(a: &GradedRing, budget: &Budget) -> Result<Subspace> {
    if a.groupoid().object_count() != 1 {
        return Err(Error::input("needs a one-object algebra"));
    }
    let e = a.groupoid().identity(0);
    carac_component_oracle(a, e, budget)
}

/// rad(R_e) for one object of a ring, by an independent ungraded engine:
/// trace form when p > dim R_e, else exhaustive quasi-regularity. Returns the
/// subspace in local R_e coordinates and the engine used.
pub fn component_radical(
    r: &GradedRing,
    e: ObjId,
    budget: &Budget,
) -> Result<(Subspace, &'static str)> {
    let (alg, _) = r.component_algebra(e)?;
    if (r.field().p() as usize) > alg.dim() {
        Ok((trace_form_radical(&alg)?, "trace-form"))
    } else {
        Ok((quasi_regularity_radical(&alg, budget)?, "quasi-regularity"))
    }
}

/// M * J for a graded ideal J of the base ring.
pub fn rad_gr_module(m: &GradedModule, j: &HomogeneousSubspace) -> Result<HomogeneousSubspace> {
    let mut out = HomogeneousSubspace::zero();
    let ring = m.ring();
    for row in j.global_rows(ring.layout()) {
        for i in 0..m.dim() {
            let mut v = m.zero_vec();
            v[i] = 1;
            let w = m.act(&v, &row);
            for (d, local) in m.layout().split(&w) {
                out.insert_vector(m.layout().field(), m.layout().component_dim(d), d, &local);
            }
        }
    }
    Ok(out.normalize())
}

/// {m in M : m J = 0}, the annihilator of a graded ideal. Splits the kernel
/// into homogeneous components (sound: the annihilator of a graded ideal is
/// graded).
pub fn annihilator(m: &GradedModule, j: &HomogeneousSubspace) -> Result<HomogeneousSubspace> {
    let f = m.layout().field();
    let ring = m.ring();
    let rows_j = j.global_rows(ring.layout());
    if rows_j.is_empty() {
        return Ok(m.full_subspace());
    }
    // rows: for each module basis i, the concatenated images m_i * x over all x
    let mut rows = Vec::with_capacity(m.dim());
    for i in 0..m.dim() {
        let mut v = m.zero_vec();
        v[i] = 1;
        let mut row = Vec::with_capacity(rows_j.len() * m.dim());
        for x in &rows_j {
            row.extend(m.act(&v, x));
        }
        rows.push(row);
    }
    let op = Matrix::from_rows(f, rows, rows_j.len() * m.dim())?;
    // {c : c * op = 0}
    let kernel = op.transpose().kernel();
    let mut out = HomogeneousSubspace::zero();
    for sol in kernel.basis() {
        for (d, local) in m.layout().split(sol) {
            out.insert_vector(f, m.layout().component_dim(d), d, &local);
        }
    }
    Ok(out.normalize())
}

/// soc(M) = annihilator of J (valid because finite-dimensional rings here
/// are gr-semilocal).
pub fn soc_gr_module(m: &GradedModule, j: &HomogeneousSubspace) -> Result<HomogeneousSubspace> {
    annihilator(m, j)
}

/// Product of two graded ideals (span of pairwise products; already an
/// ideal, no closure pass needed).
pub fn ideal_product(
    r: &GradedRing,
    a: &HomogeneousSubspace,
    b: &HomogeneousSubspace,
) -> Result<HomogeneousSubspace> {
    let mut out = HomogeneousSubspace::zero();
    for x in a.global_rows(r.layout()) {
        for y in b.global_rows(r.layout()) {
            let z = r.mul(&x, &y);
            for (d, local) in r.layout().split(&z) {
                out.insert_vector(r.field(), r.layout().component_dim(d), d, &local);
            }
        }
    }
    Ok(out.normalize())
}

/// Ascending Loewy series soc^0 = 0, soc^{n+1}/soc^n = soc(M/soc^n), up to M.
#[derive(Clone, Debug)]
pub struct LoewySeries {
    /// soc^0 = 0 included; last term is all of M
    pub terms: Vec<HomogeneousSubspace>,
    /// per-step object profile: dims of (soc^{n+1}/soc^n)(e)
    pub step_profiles: Vec<Vec<(ObjId, usize)>>,
}

impl LoewySeries {
    pub fn steps(&self) -> usize {
        self.terms.len() - 1
    }
}

/// Computes the Loewy series twice: by iterated socles of quotients (each on
/// the quotient's own presentation) and by annihilators of J^n. The two must
/// agree step for step.
pub fn loewy_series(m: &GradedModule, j: &HomogeneousSubspace) -> Result<LoewySeries> {
    if m.dim() == 0 {
        return Ok(LoewySeries {
            terms: vec![HomogeneousSubspace::zero()],
            step_profiles: Vec::new(),
        });
    }
    // route A: iterated socle of quotients
    let mut terms_a = vec![HomogeneousSubspace::zero()];
    loop {
        let current = terms_a.last().unwrap().clone();
        if current.dim() == m.dim() {
            break;
        }
        let (q, map) = m.quotient(&current)?;
        let soc_q = soc_gr_module(&q, j)?;
        if soc_q.is_zero() {
            return Err(Error::internal(
                "socle of a nonzero quotient vanished; Loewy series cannot terminate",
            ));
        }
        let mut next = current.clone();
        for row in soc_q.global_rows(q.layout()) {
            let v = map.lift(&row);
            for (d, local) in m.layout().split(&v) {
                next.insert_vector(m.layout().field(), m.layout().component_dim(d), d, &local);
            }
        }
        terms_a.push(next.normalize());
    }
    // route B: annihilators of J^n
    let mut terms_b = vec![HomogeneousSubspace::zero()];
    let mut power = j.clone();
    loop {
        let ann = annihilator(m, &power)?;
        terms_b.push(ann.clone());
        if ann.dim() == m.dim() {
            break;
        }
        if terms_b.len() > m.dim() + 2 {
            return Err(Error::internal("annihilator series fails to terminate"));
        }
        power = ideal_product(m.ring(), &power, j)?;
    }
    if terms_a != terms_b {
        return Err(Error::internal(
            "iterated-socle and annihilator Loewy series disagree",
        ));
    }
    let g = m.ring().groupoid().clone();
    let mut step_profiles = Vec::new();
    for w in terms_a.windows(2) {
        let mut profile: std::collections::BTreeMap<ObjId, usize> = Default::default();
        for d in m.layout().degrees() {
            let gap = w[1].component_dim(d) - w[0].component_dim(d);
            if gap > 0 {
                *profile.entry(g.target(d)).or_default() += gap;
            }
        }
        step_profiles.push(profile.into_iter().collect());
    }
    Ok(LoewySeries {
        terms: terms_a,
        step_profiles,
    })
}

/// Descending radical series M, MJ, MJ^2, ..., ending at 0.
pub fn radical_series(
    m: &GradedModule,
    j: &HomogeneousSubspace,
) -> Result<Vec<HomogeneousSubspace>> {
    let mut terms = vec![m.full_subspace()];
    let mut power = j.clone();
    loop {
        let term = rad_gr_module(m, &power)?;
        let last = terms.last().unwrap();
        if &term == last {
            break;
        }
        terms.push(term.clone());
        if term.is_zero() {
            break;
        }
        if terms.len() > m.dim() + 2 {
            return Err(Error::internal("radical series fails to terminate"));
        }
        power = ideal_product(m.ring(), &power, j)?;
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::GradedModule;
    use crate::poset::Poset;
    use crate::ring::{
        build_pair_matrix_ring, build_ut, field_algebra, matrix_algebra,
        truncated_polynomial_algebra,
    };

    fn budget() -> Budget {
        Budget::default()
    }

    fn name_vec(m: &GradedModule, name: &str) -> Vec<u32> {
        let mut v = m.zero_vec();
        let i = (0..m.dim()).find(|&i| m.basis()[i].name == name).unwrap();
        v[i] = 1;
        v
    }

    #[test]
    fn lattice_of_ut2_component() {
        // R(e) for UT(F_2, 1<2), e = (1,1): basis E(1,1), E(1,2); three
        // submodules total
        let a = field_algebra(2).unwrap();
        let r = build_ut(&a, &Poset::chain(2)).unwrap();
        let m = GradedModule::regular(r);
        let e = 0;
        let comp = m.component_submodule(e);
        let (cm, _) = m.submodule_as_module(&comp).unwrap();
        let lat = submodule_lattice(&cm, &budget()).unwrap();
        assert_eq!(lat.len(), 3);
    }

    #[test]
    fn gr_simple_lattice_is_two_elements() {
        let a = field_algebra(2).unwrap();
        let r = build_pair_matrix_ring(&a, 2).unwrap();
        let m = GradedModule::regular(r);
        let comp = m.component_submodule(0);
        let (cm, _) = m.submodule_as_module(&comp).unwrap();
        let lat = submodule_lattice(&cm, &budget()).unwrap();
        assert_eq!(lat.len(), 2); // {0, M}
    }

    #[test]
    fn rad_of_ut_chain3_is_strict_upper() {
        let a = field_algebra(2).unwrap();
        let r = build_ut(&a, &Poset::chain(3)).unwrap();
        let rad = rad_gr_ring(&r, &budget()).unwrap();
        assert_eq!(rad.space.dim(), 3);
        assert!(rad.two_sided_checked);
        let m = GradedModule::regular(r.clone());
        for name in ["E(1,2)", "E(1,3)", "E(2,3)"] {
            let v = name_vec(&m, name);
            for (d, local) in r.layout().split(&v) {
                assert!(rad.space.contains_local(d, &local), "{name} missing");
            }
        }
    }

    #[test]
    fn rad_of_semisimple_is_zero() {
        let a = field_algebra(2).unwrap();
        let r = build_pair_matrix_ring(&a, 2).unwrap();
        let rad = rad_gr_ring(&r, &budget()).unwrap();
        assert!(rad.space.is_zero());
    }

    #[test]
    fn carac_oracle_examples() {
        let a = field_algebra(2).unwrap();
        let r = build_ut(&a, &Poset::chain(2)).unwrap();
        let g = r.groupoid().clone();
        // gamma = (1,2): R_{(2,1)} = 0, so the whole component qualifies
        let g12 = g.morphism_by_name("(1,2)").unwrap();
        let s = carac_component_oracle(&r, g12, &budget()).unwrap();
        assert_eq!(s.dim(), 1);
        // gamma = (1,1): only 0 qualifies
        let g11 = g.morphism_by_name("(1,1)").unwrap();
        let s = carac_component_oracle(&r, g11, &budget()).unwrap();
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn carac_agrees_with_lattice_on_ut3() {
        let a = field_algebra(3).unwrap();
        let r = build_ut(&a, &Poset::chain(3)).unwrap();
        let rad = rad_gr_ring(&r, &budget()).unwrap();
        for d in r.layout().degrees() {
            let oracle = carac_component_oracle(&r, d, &budget()).unwrap();
            let from_rad = rad
                .space
                .component(d)
                .cloned()
                .unwrap_or_else(|| Subspace::zero(r.field(), r.layout().component_dim(d)));
            assert_eq!(oracle, from_rad, "degree {}", r.groupoid().morphism_name(d));
        }
    }

    #[test]
    fn trace_form_examples() {
        // F_31[x]/(x^2): radical is (x)
        let a = truncated_polynomial_algebra(31, 2).unwrap();
        let rad = trace_form_radical(&a).unwrap();
        assert_eq!(rad.dim(), 1);
        assert!(rad.contains(&[0, 1]));
        // M_2(F_31): semisimple
        let m2 = matrix_algebra(31, 2).unwrap();
        assert!(trace_form_radical(&m2).unwrap().is_zero());
        // 1-dimensional algebra: a field
        let f = field_algebra(31).unwrap();
        assert!(trace_form_radical(&f).unwrap().is_zero());
        // guard
        let small = truncated_polynomial_algebra(2, 3).unwrap();
        assert!(trace_form_radical(&small).is_err());
    }

    #[test]
    fn module_rad_and_soc_ut3() {
        let a = field_algebra(2).unwrap();
        let r = build_ut(&a, &Poset::chain(3)).unwrap();
        let j = rad_gr_ring(&r, &budget()).unwrap().space;
        let m = GradedModule::regular(r.clone());
        let comp = m.component_submodule(0); // R(e), e = (1,1)
        let (re, _) = m.submodule_as_module(&comp).unwrap();
        let rad = rad_gr_module(&re, &j).unwrap();
        assert_eq!(rad.dim(), 2); // span{E12, E13}
        let soc = soc_gr_module(&re, &j).unwrap();
        assert_eq!(soc.dim(), 1); // span{E13}
                                  // cross-check with the lattice oracle
        assert_eq!(rad, rad_gr_module_lattice(&re, &budget()).unwrap());
        assert_eq!(soc, soc_gr_module_lattice(&re, &budget()).unwrap());
    }

    #[test]
    fn loewy_and_radical_series_ut3() {
        let a = field_algebra(2).unwrap();
        let r = build_ut(&a, &Poset::chain(3)).unwrap();
        let j = rad_gr_ring(&r, &budget()).unwrap().space;
        let m = GradedModule::regular(r.clone());
        let comp = m.component_submodule(0);
        let (re, _) = m.submodule_as_module(&comp).unwrap();
        let loewy = loewy_series(&re, &j).unwrap();
        let dims: Vec<usize> = loewy.terms.iter().map(|t| t.dim()).collect();
        assert_eq!(dims, vec![0, 1, 2, 3]);
        let rs = radical_series(&re, &j).unwrap();
        let rdims: Vec<usize> = rs.iter().map(|t| t.dim()).collect();
        assert_eq!(rdims, vec![3, 2, 1, 0]);
    }

    #[test]
    fn semisimple_module_series() {
        let a = field_algebra(5).unwrap();
        let r = build_pair_matrix_ring(&a, 2).unwrap();
        let j = rad_gr_ring(&r, &budget()).unwrap().space;
        assert!(j.is_zero());
        let m = GradedModule::regular(r.clone());
        let loewy = loewy_series(&m, &j).unwrap();
        assert_eq!(loewy.steps(), 1);
        let rad = rad_gr_module(&m, &j).unwrap();
        assert!(rad.is_zero());
        let soc = soc_gr_module(&m, &j).unwrap();
        assert_eq!(soc.dim(), m.dim());
    }

    #[test]
    fn rad_of_matrix_ring_over_dual_numbers() {
        let a = truncated_polynomial_algebra(5, 2).unwrap();
        let r = build_pair_matrix_ring(&a, 3).unwrap();
        let rad = rad_gr_ring(&r, &budget()).unwrap();
        assert_eq!(rad.space.dim(), 9);
        for (_, s) in rad.space.components() {
            assert_eq!(s.dim(), 1);
        }
    }

    #[test]
    fn fast_spin_matches_module_spin() {
        let a = truncated_polynomial_algebra(3, 2).unwrap();
        let r = build_ut(&a, &Poset::chain(3)).unwrap();
        let m = GradedModule::regular(r.clone());
        let ctx = SpinContext::new(&m);
        let vectors = m
            .projective_vectors_of(&m.full_subspace(), &budget())
            .unwrap();
        for (d, local) in vectors {
            let fast = ctx.spin_local(d, &local);
            let slow = m.spin(&[m.layout().local_to_global(d, &local)]).unwrap();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn zero_module_edge() {
        let a = field_algebra(2).unwrap();
        let r = build_ut(&a, &Poset::chain(2)).unwrap();
        let m = GradedModule::regular(r.clone());
        let zero = m.spin(&[]).unwrap();
        let (z, _) = m.submodule_as_module(&zero).unwrap();
        assert_eq!(z.dim(), 0);
        assert!(z.gamma0_support().is_empty());
        let j = rad_gr_ring(&r, &budget()).unwrap().space;
        assert!(rad_gr_module(&z, &j).unwrap().is_zero());
        assert!(soc_gr_module(&z, &j).unwrap().is_zero());
    }
}
