//! Object-unital groupoid graded rings as structure-constant algebras.
//!
//! Elements are coefficient vectors over a global homogeneous basis; each
//! basis vector carries a degree in the groupoid. The product is a dense
//! table of coefficient vectors, and the per-object identities are stored
//! explicitly.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactla::{Echelon, Fp, Matrix, Subspace};
use crate::groupoid::{Groupoid, MorId, ObjId};
use crate::poset::Poset;
use crate::{Error, Result};

/// Bookkeeping shared by rings and modules: which basis positions carry
/// which degree.
#[derive(Clone, Debug)]
pub struct DegreeLayout {
    field: Fp,
    degree_of: Vec<MorId>,
    by_degree: Vec<Vec<usize>>,
}

impl DegreeLayout {
    pub fn new(field: Fp, degrees: &[MorId], morphism_count: usize) -> DegreeLayout {
        let mut by_degree = vec![Vec::new(); morphism_count];
        for (i, &d) in degrees.iter().enumerate() {
            by_degree[d].push(i);
        }
        DegreeLayout {
            field,
            degree_of: degrees.to_vec(),
            by_degree,
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.degree_of.len()
    }

    pub fn degree_of(&self, i: usize) -> MorId {
        self.degree_of[i]
    }

    pub fn indices(&self, degree: MorId) -> &[usize] {
        &self.by_degree[degree]
    }

    pub fn component_dim(&self, degree: MorId) -> usize {
        self.by_degree[degree].len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.by_degree.len()).filter(|&d| !self.by_degree[d].is_empty())
    }

    pub fn local_to_global(&self, degree: MorId, local: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        for (k, &i) in self.by_degree[degree].iter().enumerate() {
            v[i] = local[k];
        }
        v
    }

    pub fn global_to_local(&self, degree: MorId, v: &[u32]) -> Vec<u32> {
        self.by_degree[degree].iter().map(|&i| v[i]).collect()
    }

    /// Splits a vector into its nonzero homogeneous components.
    pub fn split(&self, v: &[u32]) -> Vec<(MorId, Vec<u32>)> {
        let mut out = Vec::new();
        for (d, idxs) in self.by_degree.iter().enumerate() {
            if idxs.is_empty() {
                continue;
            }
            if idxs.iter().any(|&i| v[i] != 0) {
                out.push((d, idxs.iter().map(|&i| v[i]).collect()));
            }
        }
        out
    }

    /// The degree of a nonzero homogeneous vector; None for zero; error when
    /// the support mixes degrees.
    pub fn degree(&self, v: &[u32]) -> Result<Option<MorId>> {
        let parts = self.split(v);
        match parts.len() {
            0 => Ok(None),
            1 => Ok(Some(parts[0].0)),
            _ => Err(Error::input("vector is not homogeneous")),
        }
    }
}

/// A graded subspace: one canonical subspace per degree, in the local
/// coordinates of that degree's basis positions. Used for graded ideals and
/// graded submodules. Equality is degreewise subspace equality, so the value
/// is canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HomogeneousSubspace {
    components: BTreeMap<MorId, Subspace>,
}

impl HomogeneousSubspace {
    pub fn zero() -> HomogeneousSubspace {
        HomogeneousSubspace {
            components: BTreeMap::new(),
        }
    }

    pub fn insert_vector(&mut self, field: Fp, ambient: usize, degree: MorId, v: &[u32]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return false;
        }
        let entry = self
            .components
            .entry(degree)
            .or_insert_with(|| Subspace::zero(field, ambient));
        let mut ech = entry.to_echelon();
        let grew = ech.insert(v);
        if grew {
            *entry = ech.into_subspace();
        }
        grew
    }

    pub fn component(&self, degree: MorId) -> Option<&Subspace> {
        self.components.get(&degree)
    }

    pub fn components(&self) -> impl Iterator<Item = (MorId, &Subspace)> {
        self.components.iter().map(|(&d, s)| (d, s))
    }

    pub fn support(&self) -> Vec<MorId> {
        self.components
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(&d, _)| d)
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.components.values().map(|s| s.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|s| s.is_zero())
    }

    pub fn component_dim(&self, degree: MorId) -> usize {
        self.components.get(&degree).map_or(0, |s| s.dim())
    }

    pub fn normalize(mut self) -> HomogeneousSubspace {
        self.components.retain(|_, s| !s.is_zero());
        self
    }

    pub fn contains_local(&self, degree: MorId, v: &[u32]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        self.components.get(&degree).is_some_and(|s| s.contains(v))
    }

    pub fn contains(&self, other: &HomogeneousSubspace) -> bool {
        other.components.iter().all(|(&d, s)| {
            s.is_zero()
                || self
                    .components
                    .get(&d)
                    .is_some_and(|t| t.contains_subspace(s))
        })
    }

    pub fn sum(&self, other: &HomogeneousSubspace) -> Result<HomogeneousSubspace> {
        let mut out = self.clone();
        for (&d, s) in &other.components {
            match out.components.get_mut(&d) {
                Some(t) => *t = t.sum(s)?,
                None => {
                    out.components.insert(d, s.clone());
                }
            }
        }
        Ok(out.normalize())
    }

    pub fn intersect(&self, other: &HomogeneousSubspace) -> Result<HomogeneousSubspace> {
        let mut out = HomogeneousSubspace::zero();
        for (&d, s) in &self.components {
            if let Some(t) = other.components.get(&d) {
                let i = s.intersect(t)?;
                if !i.is_zero() {
                    out.components.insert(d, i);
                }
            }
        }
        Ok(out)
    }

    /// Objects e with a nonzero component of degree gamma, r(gamma) = e.
    pub fn support_objects(&self, groupoid: &Groupoid) -> Vec<ObjId> {
        let mut objs: Vec<ObjId> = self
            .components
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(&d, _)| groupoid.target(d))
            .collect();
        objs.sort_unstable();
        objs.dedup();
        objs
    }

    /// Global coordinate rows of a degreewise basis.
    pub fn global_rows(&self, layout: &DegreeLayout) -> Vec<Vec<u32>> {
        let mut rows = Vec::new();
        for (&d, s) in &self.components {
            for b in s.basis() {
                rows.push(layout.local_to_global(d, b));
            }
        }
        rows
    }

    pub fn from_global_rows(
        layout: &DegreeLayout,
        rows: &[Vec<u32>],
    ) -> Result<HomogeneousSubspace> {
        let mut out = HomogeneousSubspace::zero();
        for r in rows {
            for (d, local) in layout.split(r) {
                out.insert_vector(layout.field(), layout.component_dim(d), d, &local);
            }
        }
        Ok(out.normalize())
    }
}

#[derive(Clone, Debug)]
pub struct BasisVec {
    pub name: String,
    pub degree: MorId,
}

/// One violated ring axiom instance.
#[derive(Clone, Debug)]
pub enum RingViolation {
    Grading { i: usize, j: usize, detail: String },
    Associativity { i: usize, j: usize, k: usize },
    UnitSupport { object: String },
    UnitLaw { object: String, basis: String },
}

impl std::fmt::Display for RingViolation {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingViolation::Grading { i, j, detail } => {
                write!(out, "grading law fails on basis pair ({i},{j}): {detail}")
            }
            RingViolation::Associativity { i, j, k } => {
                write!(out, "associativity fails on basis triple ({i},{j},{k})")
            }
            RingViolation::UnitSupport { object } => {
                write!(
                    out,
                    "unit of object {object} is not supported on its identity degree"
                )
            }
            RingViolation::UnitLaw { object, basis } => {
                write!(out, "unit law fails at object {object} on basis {basis}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradedRing {
    groupoid: Arc<Groupoid>,
    layout: DegreeLayout,
    basis: Vec<BasisVec>,
    /// product[i * dim + j] = coefficient vector of e_i * e_j
    product: Vec<Vec<u32>>,
    /// units[e] = coordinates of 1_e
    units: Vec<Vec<u32>>,
}

impl GradedRing {
    pub fn from_parts(
        groupoid: Arc<Groupoid>,
        field: Fp,
        basis: Vec<BasisVec>,
        product: Vec<Vec<u32>>,
        units: Vec<Vec<u32>>,
    ) -> Result<GradedRing> {
        let dim = basis.len();
        if product.len() != dim * dim || product.iter().any(|v| v.len() != dim) {
            return Err(Error::input("product table has wrong shape"));
        }
        if units.len() != groupoid.object_count() || units.iter().any(|v| v.len() != dim) {
            return Err(Error::input("unit table has wrong shape"));
        }
        let mut names = std::collections::HashSet::new();
        for b in &basis {
            if !names.insert(b.name.clone()) {
                return Err(Error::input(format!("duplicate basis name {}", b.name)));
            }
            if b.degree >= groupoid.morphism_count() {
                return Err(Error::input("basis degree out of range"));
            }
        }
        let degrees: Vec<MorId> = basis.iter().map(|b| b.degree).collect();
        let layout = DegreeLayout::new(field, &degrees, groupoid.morphism_count());
        Ok(GradedRing {
            groupoid,
            layout,
            basis,
            product,
            units,
        })
    }

    pub fn from_sparse(
        groupoid: Arc<Groupoid>,
        field: Fp,
        basis: Vec<BasisVec>,
        products: &[(usize, usize, usize, u32)],
        units: &[(ObjId, Vec<(usize, u32)>)],
    ) -> Result<GradedRing> {
        let dim = basis.len();
        let mut table = vec![vec![0u32; dim]; dim * dim];
        for &(i, j, k, c) in products {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::input("product entry index out of range"));
            }
            table[i * dim + j][k] = field.add(table[i * dim + j][k], c % field.p());
        }
        let mut unit_table = vec![vec![0u32; dim]; groupoid.object_count()];
        for (e, coords) in units {
            if *e >= groupoid.object_count() {
                return Err(Error::input("unit object out of range"));
            }
            for &(i, c) in coords {
                if i >= dim {
                    return Err(Error::input("unit coordinate out of range"));
                }
                unit_table[*e][i] = c % field.p();
            }
        }
        GradedRing::from_parts(groupoid, field, basis, table, unit_table)
    }

    pub fn groupoid(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn field(&self) -> Fp {
        self.layout.field()
    }

    pub fn layout(&self) -> &DegreeLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVec] {
        &self.basis
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn degree_of_basis(&self, i: usize) -> MorId {
        self.basis[i].degree
    }

    pub fn unit(&self, e: ObjId) -> &[u32] {
        &self.units[e]
    }

    /// Sum of all object units; the ring identity (the support is finite).
    pub fn one(&self) -> Vec<u32> {
        let f = self.field();
        let mut v = vec![0u32; self.dim()];
        for u in &self.units {
            for (x, &y) in v.iter_mut().zip(u) {
                *x = f.add(*x, y);
            }
        }
        v
    }

    pub fn zero_vec(&self) -> Vec<u32> {
        vec![0u32; self.dim()]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        &self.product[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field();
        let dim = self.dim();
        let mut out = vec![0u32; dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = f.mul(ai, bj);
                let row = self.basis_product(i, j);
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = f.add(*o, f.mul(c, r));
                }
            }
        }
        out
    }

    /// Checks grading, associativity and the object-unital laws; reports
    /// every violated instance.
    pub fn validate(&self) -> Vec<RingViolation> {
        let mut bad = Vec::new();
        let dim = self.dim();
        let g = &self.groupoid;
        for i in 0..dim {
            for j in 0..dim {
                let prod = self.basis_product(i, j);
                let target = g.compose(self.basis[i].degree, self.basis[j].degree);
                match target {
                    None => {
                        if prod.iter().any(|&x| x != 0) {
                            bad.push(RingViolation::Grading {
                                i,
                                j,
                                detail: "product of non-composable degrees is nonzero".into(),
                            });
                        }
                    }
                    Some(d) => {
                        for (k, &c) in prod.iter().enumerate() {
                            if c != 0 && self.basis[k].degree != d {
                                bad.push(RingViolation::Grading {
                                    i,
                                    j,
                                    detail: format!(
                                        "product has support outside degree {}",
                                        g.morphism_name(d)
                                    ),
                                });
                                break;
                            }
                        }
                    }
                }
            }
        }
        let mut ei = vec![0u32; dim];
        for i in 0..dim {
            ei[i] = 1;
            for j in 0..dim {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..dim {
                    let jk = self.basis_product(j, k);
                    let mut ek = vec![0u32; dim];
                    ek[k] = 1;
                    let left = self.mul(&ij, &ek);
                    let right = self.mul(&ei, jk);
                    if left != right {
                        bad.push(RingViolation::Associativity { i, j, k });
                    }
                }
            }
            ei[i] = 0;
        }
        for e in g.objects() {
            let u = &self.units[e];
            let id_degree = g.identity(e);
            for (k, &c) in u.iter().enumerate() {
                if c != 0 && self.basis[k].degree != id_degree {
                    bad.push(RingViolation::UnitSupport {
                        object: g.object_name(e).into(),
                    });
                    break;
                }
            }
        }
        for (i, b) in self.basis.iter().enumerate() {
            let r = g.target(b.degree);
            let d = g.source(b.degree);
            let mut v = vec![0u32; dim];
            v[i] = 1;
            if self.mul(&self.units[r], &v) != v {
                bad.push(RingViolation::UnitLaw {
                    object: g.object_name(r).into(),
                    basis: b.name.clone(),
                });
            }
            if self.mul(&v, &self.units[d]) != v {
                bad.push(RingViolation::UnitLaw {
                    object: g.object_name(d).into(),
                    basis: b.name.clone(),
                });
            }
        }
        bad
    }

    pub fn validated(self) -> Result<Arc<GradedRing>> {
        let bad = self.validate();
        if let Some(first) = bad.first() {
            return Err(Error::validation(format!(
                "ring axioms violated ({} instances), first: {first}",
                bad.len()
            )));
        }
        Ok(Arc::new(self))
    }

    /// The corner 1_e R 1_f as a homogeneous subspace: all components of
    /// degree gamma with r(gamma) = e and d(gamma) = f.
    pub fn corner(&self, e: ObjId, f: ObjId) -> Result<HomogeneousSubspace> {
        if e >= self.groupoid.object_count() || f >= self.groupoid.object_count() {
            return Err(Error::input("unknown object"));
        }
        let mut out = HomogeneousSubspace::zero();
        for d in self.layout.degrees() {
            if self.groupoid.target(d) == e && self.groupoid.source(d) == f {
                out.components.insert(
                    d,
                    Subspace::full(self.field(), self.layout.component_dim(d)),
                );
            }
        }
        Ok(out)
    }

    /// The full graded subring on a subset of objects, as a ring over the
    /// restricted groupoid.
    pub fn full_subring(&self, objects: &[ObjId]) -> Result<Arc<GradedRing>> {
        let g = &self.groupoid;
        for &e in objects {
            if e >= g.object_count() {
                return Err(Error::input("unknown object"));
            }
        }
        let keep_obj: Vec<ObjId> = {
            let mut v = objects.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        let obj_names: Vec<String> = keep_obj.iter().map(|&e| g.object_name(e).into()).collect();
        let keep_mor: Vec<MorId> = g
            .morphisms()
            .filter(|&m| keep_obj.contains(&g.source(m)) && keep_obj.contains(&g.target(m)))
            .collect();
        let mor_list: Vec<(String, String, String)> = keep_mor
            .iter()
            .map(|&m| {
                (
                    g.morphism_name(m).into(),
                    g.object_name(g.source(m)).into(),
                    g.object_name(g.target(m)).into(),
                )
            })
            .collect();
        let identities: Vec<String> = keep_obj
            .iter()
            .map(|&e| g.morphism_name(g.identity(e)).into())
            .collect();
        let mut compose = Vec::new();
        for &a in &keep_mor {
            for &b in &keep_mor {
                if let Some(c) = g.compose(a, b) {
                    compose.push((
                        g.morphism_name(a).to_string(),
                        g.morphism_name(b).to_string(),
                        g.morphism_name(c).to_string(),
                    ));
                }
            }
        }
        let inverses: Vec<(String, String)> = keep_mor
            .iter()
            .map(|&m| {
                (
                    g.morphism_name(m).to_string(),
                    g.morphism_name(g.inverse(m)).to_string(),
                )
            })
            .collect();
        let sub_groupoid =
            Groupoid::from_parts(obj_names, mor_list, identities, &compose, &inverses)?
                .validated()?;
        // basis restriction
        let keep_basis: Vec<usize> = (0..self.dim())
            .filter(|&i| keep_mor.contains(&self.basis[i].degree))
            .collect();
        let basis: Vec<BasisVec> = keep_basis
            .iter()
            .map(|&i| BasisVec {
                name: self.basis[i].name.clone(),
                degree: sub_groupoid
                    .morphism_by_name(g.morphism_name(self.basis[i].degree))
                    .expect("kept morphism"),
            })
            .collect();
        let dim = keep_basis.len();
        let mut product = vec![vec![0u32; dim]; dim * dim];
        for (a, &i) in keep_basis.iter().enumerate() {
            for (b, &j) in keep_basis.iter().enumerate() {
                let row = self.basis_product(i, j);
                for (c, &k) in keep_basis.iter().enumerate() {
                    product[a * dim + b][c] = row[k];
                }
            }
        }
        let mut units = Vec::new();
        for &e in &keep_obj {
            let u = &self.units[e];
            units.push(keep_basis.iter().map(|&i| u[i]).collect());
        }
        GradedRing::from_parts(sub_groupoid, self.field(), basis, product, units)?.validated()
    }

    /// Closes a set of homogeneous generators to a two-sided graded ideal.
    pub fn two_sided_ideal(&self, generators: &[Vec<u32>]) -> Result<HomogeneousSubspace> {
        let f = self.field();
        let mut space = HomogeneousSubspace::zero();
        let mut work: Vec<Vec<u32>> = Vec::new();
        for gen in generators {
            for (d, local) in self.layout.split(gen) {
                if space.insert_vector(f, self.layout.component_dim(d), d, &local) {
                    work.push(self.layout.local_to_global(d, &local));
                }
            }
        }
        let dim = self.dim();
        while let Some(v) = work.pop() {
            for i in 0..dim {
                let mut basis_vec = vec![0u32; dim];
                basis_vec[i] = 1;
                for w in [self.mul(&v, &basis_vec), self.mul(&basis_vec, &v)] {
                    for (d, local) in self.layout.split(&w) {
                        if space.insert_vector(f, self.layout.component_dim(d), d, &local) {
                            work.push(self.layout.local_to_global(d, &local));
                        }
                    }
                }
            }
        }
        Ok(space)
    }

    /// Checks closedness of a homogeneous subspace under left and right
    /// multiplication by every ring basis element.
    pub fn is_two_sided_ideal(&self, space: &HomogeneousSubspace) -> bool {
        let dim = self.dim();
        for (d, s) in space.components() {
            for local in s.basis() {
                let v = self.layout.local_to_global(d, local);
                for i in 0..dim {
                    let mut b = vec![0u32; dim];
                    b[i] = 1;
                    for w in [self.mul(&v, &b), self.mul(&b, &v)] {
                        for (wd, wl) in self.layout.split(&w) {
                            if !space.contains_local(wd, &wl) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Quotient by a two-sided graded ideal, with the canonical homogeneous
    /// basis given by the non-pivot coordinates of the ideal, degree by
    /// degree.
    pub fn quotient(&self, ideal: &HomogeneousSubspace) -> Result<(Arc<GradedRing>, QuotientMap)> {
        if !self.is_two_sided_ideal(ideal) {
            return Err(Error::input("quotient by a non-two-sided set"));
        }
        let map = QuotientMap::build(&self.layout, ideal);
        let dim = map.kept.len();
        let basis: Vec<BasisVec> = map
            .kept
            .iter()
            .map(|&i| BasisVec {
                name: format!("{}~", self.basis[i].name),
                degree: self.basis[i].degree,
            })
            .collect();
        let mut product = vec![vec![0u32; dim]; dim * dim];
        for (a, &i) in map.kept.iter().enumerate() {
            for (b, &j) in map.kept.iter().enumerate() {
                product[a * dim + b] = map.project(self.basis_product(i, j));
            }
        }
        let units: Vec<Vec<u32>> = self.units.iter().map(|u| map.project(u)).collect();
        let q = GradedRing::from_parts(self.groupoid.clone(), self.field(), basis, product, units)?
            .validated()?;
        Ok((q, map))
    }

    /// The opposite ring: products reversed, degree gamma becomes
    /// gamma^{-1}.
    pub fn opposite(&self) -> Result<Arc<GradedRing>> {
        let g = &self.groupoid;
        let basis: Vec<BasisVec> = self
            .basis
            .iter()
            .map(|b| BasisVec {
                name: b.name.clone(),
                degree: g.inverse(b.degree),
            })
            .collect();
        let dim = self.dim();
        let mut product = vec![vec![0u32; dim]; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                product[i * dim + j] = self.basis_product(j, i).to_vec();
            }
        }
        GradedRing::from_parts(g.clone(), self.field(), basis, product, self.units.clone())?
            .validated()
    }

    /// Two-sided graded inverse of a homogeneous element, when it exists.
    pub fn gr_inverse(&self, a: &[u32]) -> Result<Option<Vec<u32>>> {
        let Some(gamma) = self.layout.degree(a)? else {
            return Ok(None); // zero has no graded inverse
        };
        let g = &self.groupoid;
        let gamma_inv = g.inverse(gamma);
        let unknowns = self.layout.indices(gamma_inv);
        if unknowns.is_empty() {
            return Ok(None);
        }
        let f = self.field();
        let dim = self.dim();
        // stack a*b = 1_{r(gamma)} and b*a = 1_{d(gamma)}
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let right_unit = &self.units[g.target(gamma)];
        let left_unit = &self.units[g.source(gamma)];
        for out_coord in 0..dim {
            let mut row = Vec::with_capacity(unknowns.len());
            for &u in unknowns {
                let mut b = vec![0u32; dim];
                b[u] = 1;
                row.push(self.mul(a, &b)[out_coord]);
            }
            rows.push(row);
            rhs.push(right_unit[out_coord]);
        }
        for out_coord in 0..dim {
            let mut row = Vec::with_capacity(unknowns.len());
            for &u in unknowns {
                let mut b = vec![0u32; dim];
                b[u] = 1;
                row.push(self.mul(&b, a)[out_coord]);
            }
            rows.push(row);
            rhs.push(left_unit[out_coord]);
        }
        let m = Matrix::from_rows(f, rows, unknowns.len())?;
        match m.solve(&rhs)? {
            None => Ok(None),
            Some(x) => {
                let mut b = vec![0u32; dim];
                for (k, &u) in unknowns.iter().enumerate() {
                    b[u] = x[k];
                }
                Ok(Some(b))
            }
        }
    }

    /// Restricts the degree-e component to a standalone one-object algebra.
    /// Returns the algebra and the global basis indices it came from.
    pub fn component_algebra(&self, e: ObjId) -> Result<(Arc<GradedRing>, Vec<usize>)> {
        let id = self.groupoid.identity(e);
        let idxs: Vec<usize> = self.layout.indices(id).to_vec();
        let dim = idxs.len();
        if dim == 0 {
            return Err(Error::input(format!(
                "component algebra at {} is zero",
                self.groupoid.object_name(e)
            )));
        }
        let trivial = trivial_groupoid()?;
        let basis: Vec<BasisVec> = idxs
            .iter()
            .map(|&i| BasisVec {
                name: self.basis[i].name.clone(),
                degree: trivial.identity(0),
            })
            .collect();
        let mut product = vec![vec![0u32; dim]; dim * dim];
        for (a, &i) in idxs.iter().enumerate() {
            for (b, &j) in idxs.iter().enumerate() {
                let row = self.basis_product(i, j);
                for (c, &k) in idxs.iter().enumerate() {
                    product[a * dim + b][c] = row[k];
                }
            }
        }
        let units = vec![idxs.iter().map(|&i| self.units[e][i]).collect()];
        let alg =
            GradedRing::from_parts(trivial, self.field(), basis, product, units)?.validated()?;
        Ok((alg, idxs))
    }
}

/// Degreewise projection onto the complement of an ideal/submodule's pivot
/// coordinates. `kept` are the surviving global basis indices.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    layout_dims: usize,
    pub kept: Vec<usize>,
    reducers: Vec<(MorId, Echelon)>,
    layout: DegreeLayout,
}

impl QuotientMap {
    pub(crate) fn build(layout: &DegreeLayout, space: &HomogeneousSubspace) -> QuotientMap {
        let mut kept = Vec::new();
        let mut reducers = Vec::new();
        for d in layout.degrees() {
            let idxs = layout.indices(d);
            match space.component(d) {
                None => kept.extend_from_slice(idxs),
                Some(s) => {
                    let pivots: std::collections::HashSet<usize> =
                        s.pivots().iter().copied().collect();
                    for (k, &i) in idxs.iter().enumerate() {
                        if !pivots.contains(&k) {
                            kept.push(i);
                        }
                    }
                    reducers.push((d, s.to_echelon()));
                }
            }
        }
        kept.sort_unstable();
        QuotientMap {
            layout_dims: layout.dim(),
            kept,
            reducers,
            layout: layout.clone(),
        }
    }

    /// Reduces a global vector mod the ideal/submodule and reads off the
    /// coordinates of the kept basis.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.layout_dims);
        let mut v = v.to_vec();
        for (d, ech) in &self.reducers {
            let local = self.layout.global_to_local(*d, &v);
            let reduced = ech.reduce(&local);
            for (k, &i) in self.layout.indices(*d).iter().enumerate() {
                v[i] = reduced[k];
            }
        }
        self.kept.iter().map(|&i| v[i]).collect()
    }

    /// Canonical lift: kept coordinates back to the parent.
    pub fn lift(&self, q: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.layout_dims];
        for (c, &i) in self.kept.iter().enumerate() {
            v[i] = q[c];
        }
        v
    }
}

/// The one-object groupoid with identity `e`.
pub fn trivial_groupoid() -> Result<Arc<Groupoid>> {
    Groupoid::from_parts(
        vec!["*".into()],
        vec![("e".into(), "*".into(), "*".into())],
        vec!["e".into()],
        &[("e".into(), "e".into(), "e".into())],
        &[("e".into(), "e".into())],
    )?
    .validated()
}

/// F_p as a one-object graded ring.
pub fn field_algebra(p: u32) -> Result<Arc<GradedRing>> {
    truncated_polynomial_algebra(p, 1)
}

/// F_p[x]/(x^n) as a one-object graded ring with basis 1, x, ..., x^{n-1}.
pub fn truncated_polynomial_algebra(p: u32, n: usize) -> Result<Arc<GradedRing>> {
    if n == 0 {
        return Err(Error::input("algebra dimension must be positive"));
    }
    let field = Fp::new(p)?;
    let g = trivial_groupoid()?;
    let e = g.identity(0);
    let basis: Vec<BasisVec> = (0..n)
        .map(|k| BasisVec {
            name: match k {
                0 => "1".into(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            },
            degree: e,
        })
        .collect();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                products.push((i, j, i + j, 1u32));
            }
        }
    }
    let units = vec![(0usize, vec![(0usize, 1u32)])];
    GradedRing::from_sparse(g, field, basis, &products, &units)?.validated()
}

/// M_n(F_p) as a one-object algebra (ungraded matrix algebra).
pub fn matrix_algebra(p: u32, n: usize) -> Result<Arc<GradedRing>> {
    if n == 0 {
        return Err(Error::input("matrix algebra needs n >= 1"));
    }
    let field = Fp::new(p)?;
    let g = trivial_groupoid()?;
    let e = g.identity(0);
    let idx = |i: usize, j: usize| i * n + j;
    let basis: Vec<BasisVec> = (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| BasisVec {
                name: format!("e{}{}", i + 1, j + 1),
                degree: e,
            })
        })
        .collect();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                products.push((idx(i, j), idx(j, k), idx(i, k), 1u32));
            }
        }
    }
    let units = vec![(0usize, (0..n).map(|i| (idx(i, i), 1u32)).collect())];
    GradedRing::from_sparse(g, field, basis, &products, &units)?.validated()
}

/// The group algebra F_p[Z/n], graded by the one-object groupoid Z/n itself.
pub fn cyclic_group_algebra(p: u32, n: usize) -> Result<Arc<GradedRing>> {
    let field = Fp::new(p)?;
    let (names, table) = crate::groupoid::cyclic_group_table(n);
    let g = crate::groupoid::group_groupoid(&names, &table)?;
    let basis: Vec<BasisVec> = (0..n)
        .map(|k| BasisVec {
            name: format!("g{k}"),
            degree: g.morphism_by_name(&format!("g{k}")).unwrap(),
        })
        .collect();
    let mut products = Vec::new();
    for a in 0..n {
        for b in 0..n {
            products.push((a, b, (a + b) % n, 1u32));
        }
    }
    let units = vec![(0usize, vec![(0usize, 1u32)])];
    GradedRing::from_sparse(g, field, basis, &products, &units)?.validated()
}

fn check_one_object(a: &GradedRing) -> Result<()> {
    if a.groupoid().object_count() != 1 {
        return Err(Error::input(
            "coefficient algebra must be a one-object graded ring",
        ));
    }
    Ok(())
}

/// M_I(A) graded by the pair groupoid on I: component (i,j) is A E_{ij}.
pub fn build_pair_matrix_ring(a: &GradedRing, n: usize) -> Result<Arc<GradedRing>> {
    build_matrix_like(a, n, |_, _| true)
}

/// UT_I(A): the graded subring of M_I(A) supported on pairs i <= j.
pub fn build_ut(a: &GradedRing, poset: &Poset) -> Result<Arc<GradedRing>> {
    build_matrix_like(a, poset.len(), |i, j| poset.le(i, j))
}

/// Common construction for M_I(A) and UT_I(A).
fn build_matrix_like(
    a: &GradedRing,
    n: usize,
    keep: impl Fn(usize, usize) -> bool,
) -> Result<Arc<GradedRing>> {
    check_one_object(a)?;
    if n == 0 {
        return Err(Error::input("index set must be nonempty"));
    }
    let field = a.field();
    let g = crate::groupoid::pair_groupoid(n)?;
    let adim = a.dim();
    let mut basis = Vec::new();
    let mut pos = std::collections::HashMap::new(); // (i,j,k) -> basis index
    for i in 1..=n {
        for j in 1..=n {
            if !keep(i - 1, j - 1) {
                continue;
            }
            let degree = g.morphism_by_name(&format!("({i},{j})")).unwrap();
            for k in 0..adim {
                let name = if adim == 1 {
                    format!("E({i},{j})")
                } else {
                    format!("E({i},{j})*{}", a.basis_name(k))
                };
                pos.insert((i, j, k), basis.len());
                basis.push(BasisVec { name, degree });
            }
        }
    }
    let mut products = Vec::new();
    for (&(i, j, k), &bi) in &pos {
        for (&(i2, j2, k2), &bj) in &pos {
            if j != i2 {
                continue;
            }
            if !keep(i - 1, j2 - 1) {
                // in M_I(A) this cannot happen; in UT it cannot either since
                // i <= j <= j2, kept by transitivity
                continue;
            }
            let coeffs = a.basis_product(k, k2);
            for (k3, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    products.push((bi, bj, pos[&(i, j2, k3)], c));
                }
            }
        }
    }
    let mut units = Vec::new();
    let aunit = a.unit(0);
    for e in 0..n {
        let i = e + 1;
        let mut coords = Vec::new();
        for (k, &c) in aunit.iter().enumerate() {
            if c != 0 {
                coords.push((pos[&(i, i, k)], c));
            }
        }
        units.push((e, coords));
    }
    GradedRing::from_sparse(g, field, basis, &products, &units)?.validated()
}

/// A right module over a one-object algebra, given by one action matrix per
/// algebra basis element (acting on row vectors from the right).
#[derive(Clone, Debug)]
pub struct AlgebraModule {
    pub name: String,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl AlgebraModule {
    /// The regular module A_A.
    pub fn regular(a: &GradedRing) -> AlgebraModule {
        let dim = a.dim();
        let f = a.field();
        let mut action = Vec::new();
        for k in 0..dim {
            let mut m = Matrix::zeros(f, dim, dim);
            for i in 0..dim {
                let row = a.basis_product(i, k);
                for (j, &c) in row.iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            action.push(m);
        }
        AlgebraModule {
            name: "A".into(),
            dim,
            action,
        }
    }

    /// Direct sum of copies of this module.
    pub fn power(&self, copies: usize, field: Fp) -> AlgebraModule {
        let dim = self.dim * copies;
        let mut action = Vec::new();
        for base in &self.action {
            let mut m = Matrix::zeros(field, dim, dim);
            for c in 0..copies {
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(c * self.dim + i, c * self.dim + j, base.get(i, j));
                    }
                }
            }
            action.push(m);
        }
        AlgebraModule {
            name: format!("{}^{}", self.name, copies),
            dim,
            action,
        }
    }

    /// Validates the action against the algebra's structure constants.
    pub fn validate(&self, a: &GradedRing) -> Result<()> {
        if self.action.len() != a.dim() {
            return Err(Error::input(format!(
                "module {} needs one action matrix per algebra basis element",
                self.name
            )));
        }
        for m in &self.action {
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::input(format!(
                    "module {}: action matrix has wrong shape",
                    self.name
                )));
            }
        }
        let f = a.field();
        // act(a_i) act(a_j) must equal act(a_i a_j)
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let prod = self.action[i].mul(&self.action[j])?;
                let coeffs = a.basis_product(i, j);
                let mut expect = Matrix::zeros(f, self.dim, self.dim);
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        for r in 0..self.dim {
                            for s in 0..self.dim {
                                let v = f.add(expect.get(r, s), f.mul(c, self.action[k].get(r, s)));
                                expect.set(r, s, v);
                            }
                        }
                    }
                }
                if prod != expect {
                    return Err(Error::input(format!(
                        "module {}: action does not respect the product on basis pair ({i},{j})",
                        self.name
                    )));
                }
            }
        }
        // unitality
        let mut unit_action = Matrix::zeros(f, self.dim, self.dim);
        for (k, &c) in a.unit(0).iter().enumerate() {
            if c != 0 {
                for r in 0..self.dim {
                    for s in 0..self.dim {
                        let v = f.add(unit_action.get(r, s), f.mul(c, self.action[k].get(r, s)));
                        unit_action.set(r, s, v);
                    }
                }
            }
        }
        if unit_action != Matrix::identity(f, self.dim) {
            return Err(Error::input(format!(
                "module {}: unit does not act as identity",
                self.name
            )));
        }
        Ok(())
    }
}

/// Basis of Hom_A(M, N): matrices X with act_M(a) X = X act_N(a) for all a.
pub fn algebra_hom_basis(
    a: &GradedRing,
    m: &AlgebraModule,
    n: &AlgebraModule,
) -> Result<Vec<Matrix>> {
    let f = a.field();
    let unknowns = m.dim * n.dim; // X[l][c], row-major
    let mut rows = Vec::new();
    for act in 0..a.dim() {
        let am = &m.action[act];
        let an = &n.action[act];
        for i in 0..m.dim {
            for j in 0..n.dim {
                // (am X)_{ij} - (X an)_{ij} = 0
                let mut row = vec![0u32; unknowns];
                for l in 0..m.dim {
                    row[l * n.dim + j] = f.add(row[l * n.dim + j], am.get(i, l));
                }
                for c in 0..n.dim {
                    row[i * n.dim + c] = f.sub(row[i * n.dim + c], an.get(c, j));
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(f, rows, unknowns)?;
    let kernel = system.kernel();
    let mut out = Vec::new();
    for sol in kernel.basis() {
        let mut x = Matrix::zeros(f, m.dim, n.dim);
        for l in 0..m.dim {
            for c in 0..n.dim {
                x.set(l, c, sol[l * n.dim + c]);
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// The graded ring of a finite preadditive category built from right
/// A-modules: component (i,j) is Hom_A(M_j, M_i), the product is composition.
/// Keeps the hom-space matrices so callers can go back from ring coordinates
/// to concrete module maps.
pub struct CategoryRing {
    pub ring: Arc<GradedRing>,
    pub algebra: Arc<GradedRing>,
    pub modules: Vec<AlgebraModule>,
    /// hom_basis[(i,j)] = matrices spanning Hom(M_j, M_i), in ring basis order
    pub hom_basis: BTreeMap<(usize, usize), Vec<Matrix>>,
    /// ring basis index of each (i, j, k) hom basis element
    pub basis_offset: BTreeMap<(usize, usize), usize>,
}

pub fn build_category_ring(a: &Arc<GradedRing>, modules: &[AlgebraModule]) -> Result<CategoryRing> {
    check_one_object(a)?;
    if modules.is_empty() {
        return Err(Error::input("category ring needs at least one module"));
    }
    for m in modules {
        m.validate(a)?;
    }
    let n = modules.len();
    let field = a.field();
    let g = crate::groupoid::pair_groupoid(n)?;
    let mut hom_basis = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            // degree (i+1, j+1) holds Hom(M_j -> M_i)
            hom_basis.insert((i, j), algebra_hom_basis(a, &modules[j], &modules[i])?);
        }
    }
    let mut basis = Vec::new();
    let mut basis_offset = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let degree = g
                .morphism_by_name(&format!("({},{})", i + 1, j + 1))
                .unwrap();
            basis_offset.insert((i, j), basis.len());
            for (k, _) in hom_basis[&(i, j)].iter().enumerate() {
                basis.push(BasisVec {
                    name: format!("h({},{})#{k}", i + 1, j + 1),
                    degree,
                });
            }
        }
    }
    // vectorized echelon of each hom space for coefficient extraction
    let vectorize = |x: &Matrix| -> Vec<u32> {
        let mut v = Vec::with_capacity(x.rows() * x.cols());
        for i in 0..x.rows() {
            v.extend_from_slice(x.row(i));
        }
        v
    };
    let mut echelons: BTreeMap<(usize, usize), (Echelon, Vec<usize>)> = BTreeMap::new();
    for (&key, homs) in &hom_basis {
        let amb = modules[key.1].dim * modules[key.0].dim;
        let mut ech = Echelon::new(field, amb);
        for h in homs {
            ech.insert(&vectorize(h));
        }
        if ech.dim() != homs.len() {
            return Err(Error::internal("hom basis is not independent"));
        }
        // map echelon row order back to hom order: kernel bases are already
        // echelonized, so the orders agree
        let order: Vec<usize> = (0..homs.len()).collect();
        echelons.insert(key, (ech, order));
    }
    let coeffs_of = |key: (usize, usize), x: &Matrix| -> Result<Vec<u32>> {
        let (ech, _) = &echelons[&key];
        let v = vectorize(x);
        if !ech.contains(&v) {
            return Err(Error::internal("composite escapes the hom space"));
        }
        // RREF rows: coefficient of row t is v at that row's pivot
        let mut out = Vec::new();
        for row in ech.rows() {
            let pivot = row.iter().position(|&c| c != 0).unwrap();
            out.push(v[pivot]);
        }
        Ok(out)
    };
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // f in Hom(M_j, M_i) (degree (i,j)), g in Hom(M_k, M_j)
                // (degree (j,k)): f.g = f o g, matrix X_g X_f
                for (fi, fmat) in hom_basis[&(i, j)].iter().enumerate() {
                    for (gi, gmat) in hom_basis[&(j, k)].iter().enumerate() {
                        let comp = gmat.mul(fmat)?;
                        let cs = coeffs_of((i, k), &comp)?;
                        let bi = basis_offset[&(i, j)] + fi;
                        let bj = basis_offset[&(j, k)] + gi;
                        for (t, &c) in cs.iter().enumerate() {
                            if c != 0 {
                                products.push((bi, bj, basis_offset[&(i, k)] + t, c));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut units = Vec::new();
    for i in 0..n {
        let id = Matrix::identity(field, modules[i].dim);
        let cs = coeffs_of((i, i), &id)?;
        let mut coords = Vec::new();
        for (t, &c) in cs.iter().enumerate() {
            if c != 0 {
                coords.push((basis_offset[&(i, i)] + t, c));
            }
        }
        units.push((i, coords));
    }
    let ring = GradedRing::from_sparse(g, field, basis, &products, &units)?.validated()?;
    Ok(CategoryRing {
        ring,
        algebra: a.clone(),
        modules: modules.to_vec(),
        hom_basis,
        basis_offset,
    })
}

/// M_N(F_p) regraded by the pair groupoid on blocks: the degree of E_uv is
/// the pair (block(u), block(v)). Block sizes give N = s_1 + ... + s_k.
pub fn blocked_matrix_ring(p: u32, block_sizes: &[usize]) -> Result<Arc<GradedRing>> {
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(Error::input("block sizes must be nonempty and positive"));
    }
    let field = Fp::new(p)?;
    let k = block_sizes.len();
    let n: usize = block_sizes.iter().sum();
    let g = crate::groupoid::pair_groupoid(k)?;
    let block_of = {
        let mut b = Vec::with_capacity(n);
        for (bi, &s) in block_sizes.iter().enumerate() {
            for _ in 0..s {
                b.push(bi);
            }
        }
        b
    };
    let idx = |u: usize, v: usize| u * n + v;
    let mut basis = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let degree = g
                .morphism_by_name(&format!("({},{})", block_of[u] + 1, block_of[v] + 1))
                .unwrap();
            basis.push(BasisVec {
                name: format!("E{}{}", u + 1, v + 1),
                degree,
            });
        }
    }
    let mut products = Vec::new();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                products.push((idx(u, v), idx(v, w), idx(u, w), 1u32));
            }
        }
    }
    let mut units = Vec::new();
    for bi in 0..k {
        let coords: Vec<(usize, u32)> = (0..n)
            .filter(|&u| block_of[u] == bi)
            .map(|u| (idx(u, u), 1u32))
            .collect();
        units.push((bi, coords));
    }
    GradedRing::from_sparse(g, field, basis, &products, &units)?.validated()
}
