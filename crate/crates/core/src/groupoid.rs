//! Finite groupoids with dense composition tables.
//!
//! A groupoid is identified with its morphism set; objects are the identity
//! morphisms. Morphisms and objects are addressed by small integer ids so
//! that all degree arithmetic downstream is O(1) table lookups.

use std::collections::HashMap;
use std::sync::Arc;

use crate::{Error, Result};

/// Index into the morphism list of a groupoid.
pub type MorId = usize;
/// Index into the object list of a groupoid.
pub type ObjId = usize;

#[derive(Clone, Debug)]
struct MorData {
    name: String,
    source: ObjId,
    target: ObjId,
}

#[derive(Clone, Debug)]
pub struct Groupoid {
    morphisms: Vec<MorData>,
    /// identity morphism of each object
    identities: Vec<MorId>,
    object_names: Vec<String>,
    /// dense |M|^2 table; None encodes "not defined"
    compose: Vec<Option<MorId>>,
    inverse: Vec<MorId>,
    by_name: HashMap<String, MorId>,
}

/// One violated axiom instance found by [`Groupoid::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupoidViolation {
    Composability {
        left: String,
        right: String,
        detail: String,
    },
    Associativity {
        a: String,
        b: String,
        c: String,
    },
    Identity {
        object: String,
        morphism: String,
    },
    Inverse {
        morphism: String,
    },
}

impl std::fmt::Display for GroupoidViolation {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupoidViolation::Composability {
                left,
                right,
                detail,
            } => {
                write!(out, "composition {left} . {right}: {detail}")
            }
            GroupoidViolation::Associativity { a, b, c } => {
                write!(out, "associativity fails on ({a}, {b}, {c})")
            }
            GroupoidViolation::Identity { object, morphism } => {
                write!(out, "identity law fails at object {object} on {morphism}")
            }
            GroupoidViolation::Inverse { morphism } => {
                write!(out, "inverse law fails for {morphism}")
            }
        }
    }
}

impl Groupoid {
    /// Builds a groupoid from raw data. `morphisms` are (name, source, target)
    /// with objects named in `objects`; `identities[k]` names the identity of
    /// `objects[k]`. The composition table maps name pairs to names.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identities: Vec<String>,
        compose: &[(String, String, String)],
        inverses: &[(String, String)],
    ) -> Result<Groupoid> {
        if objects.is_empty() {
            return Err(Error::input("groupoid needs at least one object"));
        }
        let obj_idx: HashMap<String, ObjId> = objects
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        if obj_idx.len() != objects.len() {
            return Err(Error::input("duplicate object name"));
        }
        let mut mors = Vec::new();
        let mut by_name = HashMap::new();
        for (name, s, t) in morphisms {
            let source = *obj_idx
                .get(&s)
                .ok_or_else(|| Error::input(format!("unknown source object {s}")))?;
            let target = *obj_idx
                .get(&t)
                .ok_or_else(|| Error::input(format!("unknown target object {t}")))?;
            if by_name.insert(name.clone(), mors.len()).is_some() {
                return Err(Error::input(format!("duplicate morphism name {name}")));
            }
            mors.push(MorData {
                name,
                source,
                target,
            });
        }
        if identities.len() != objects.len() {
            return Err(Error::input("one identity per object required"));
        }
        let mut ids = Vec::new();
        for (k, name) in identities.iter().enumerate() {
            let m = *by_name
                .get(name)
                .ok_or_else(|| Error::input(format!("unknown identity morphism {name}")))?;
            if mors[m].source != k || mors[m].target != k {
                return Err(Error::input(format!(
                    "identity {name} is not an endomorphism of object {}",
                    objects[k]
                )));
            }
            ids.push(m);
        }
        let n = mors.len();
        let mut table = vec![None; n * n];
        for (l, r, res) in compose {
            let li = *by_name
                .get(l)
                .ok_or_else(|| Error::input(format!("unknown morphism {l}")))?;
            let ri = *by_name
                .get(r)
                .ok_or_else(|| Error::input(format!("unknown morphism {r}")))?;
            let pi = *by_name
                .get(res)
                .ok_or_else(|| Error::input(format!("unknown morphism {res}")))?;
            table[li * n + ri] = Some(pi);
        }
        let mut inv = vec![usize::MAX; n];
        for (m, i) in inverses {
            let mi = *by_name
                .get(m)
                .ok_or_else(|| Error::input(format!("unknown morphism {m}")))?;
            let ii = *by_name
                .get(i)
                .ok_or_else(|| Error::input(format!("unknown morphism {i}")))?;
            inv[mi] = ii;
        }
        if inv.iter().any(|&x| x == usize::MAX) {
            return Err(Error::input("every morphism needs an inverse entry"));
        }
        Ok(Groupoid {
            morphisms: mors,
            identities: ids,
            object_names: objects,
            compose: table,
            inverse: inv,
            by_name,
        })
    }

    pub fn object_count(&self) -> usize {
        self.identities.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        0..self.identities.len()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, e: ObjId) -> &str {
        &self.object_names[e]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m].name
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.by_name.get(name).copied()
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.object_names.iter().position(|n| n == name)
    }

    /// d(m): the source object.
    pub fn source(&self, m: MorId) -> ObjId {
        self.morphisms[m].source
    }

    /// r(m): the target object.
    pub fn target(&self, m: MorId) -> ObjId {
        self.morphisms[m].target
    }

    pub fn identity(&self, e: ObjId) -> MorId {
        self.identities[e]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities.contains(&m)
    }

    /// delta . gamma, defined exactly when d(delta) = r(gamma).
    pub fn compose(&self, delta: MorId, gamma: MorId) -> Option<MorId> {
        self.compose[delta * self.morphisms.len() + gamma]
    }

    pub fn inverse(&self, m: MorId) -> MorId {
        self.inverse[m]
    }

    /// Checks every groupoid axiom instance and reports all violations.
    pub fn validate(&self) -> Vec<GroupoidViolation> {
        let mut bad = Vec::new();
        let n = self.morphisms.len();
        for a in 0..n {
            for b in 0..n {
                let defined = self.compose(a, b);
                let should = self.source(a) == self.target(b);
                match (defined, should) {
                    (None, true) => bad.push(GroupoidViolation::Composability {
                        left: self.morphism_name(a).into(),
                        right: self.morphism_name(b).into(),
                        detail: "composable pair has no product".into(),
                    }),
                    (Some(_), false) => bad.push(GroupoidViolation::Composability {
                        left: self.morphism_name(a).into(),
                        right: self.morphism_name(b).into(),
                        detail: "non-composable pair has a product".into(),
                    }),
                    (Some(c), true) => {
                        if self.source(c) != self.source(b) || self.target(c) != self.target(a) {
                            bad.push(GroupoidViolation::Composability {
                                left: self.morphism_name(a).into(),
                                right: self.morphism_name(b).into(),
                                detail: "product has wrong endpoints".into(),
                            });
                        }
                    }
                    (None, false) => {}
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.compose(a, b).is_none() {
                    continue;
                }
                for c in 0..n {
                    if self.compose(b, c).is_none() {
                        continue;
                    }
                    let left = self.compose(a, b).and_then(|ab| self.compose(ab, c));
                    let right = self.compose(b, c).and_then(|bc| self.compose(a, bc));
                    if left != right || left.is_none() {
                        bad.push(GroupoidViolation::Associativity {
                            a: self.morphism_name(a).into(),
                            b: self.morphism_name(b).into(),
                            c: self.morphism_name(c).into(),
                        });
                    }
                }
            }
        }
        for m in 0..n {
            let e = self.identity(self.target(m));
            let f = self.identity(self.source(m));
            if self.compose(e, m) != Some(m) {
                bad.push(GroupoidViolation::Identity {
                    object: self.object_name(self.target(m)).into(),
                    morphism: self.morphism_name(m).into(),
                });
            }
            if self.compose(m, f) != Some(m) {
                bad.push(GroupoidViolation::Identity {
                    object: self.object_name(self.source(m)).into(),
                    morphism: self.morphism_name(m).into(),
                });
            }
        }
        for m in 0..n {
            let i = self.inverse(m);
            let ok = self.source(i) == self.target(m)
                && self.target(i) == self.source(m)
                && self.compose(i, m) == Some(self.identity(self.source(m)))
                && self.compose(m, i) == Some(self.identity(self.target(m)));
            if !ok {
                bad.push(GroupoidViolation::Inverse {
                    morphism: self.morphism_name(m).into(),
                });
            }
        }
        bad
    }

    pub fn validated(self) -> Result<Arc<Groupoid>> {
        let bad = self.validate();
        if let Some(first) = bad.first() {
            return Err(Error::validation(format!(
                "groupoid axioms violated ({} instances), first: {first}",
                bad.len()
            )));
        }
        Ok(Arc::new(self))
    }
}

/// Pair groupoid on `{1, ..., n}`: morphisms `(i,j)` from j to i with
/// `(z,y)(y,x) = (z,x)`.
pub fn pair_groupoid(n: usize) -> Result<Arc<Groupoid>> {
    if n == 0 {
        return Err(Error::input("pair groupoid needs a nonempty index set"));
    }
    let objects: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut morphisms = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            morphisms.push((format!("({i},{j})"), j.to_string(), i.to_string()));
        }
    }
    let identities: Vec<String> = (1..=n).map(|i| format!("({i},{i})")).collect();
    let mut compose = Vec::new();
    let mut inverses = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            inverses.push((format!("({i},{j})"), format!("({j},{i})")));
            for k in 1..=n {
                compose.push((
                    format!("({i},{j})"),
                    format!("({j},{k})"),
                    format!("({i},{k})"),
                ));
            }
        }
    }
    Groupoid::from_parts(objects, morphisms, identities, &compose, &inverses)?.validated()
}

/// A finite group presented by its multiplication table as a one-object
/// groupoid. `table[a][b]` is the index of the product, with element 0 the
/// identity.
pub fn group_groupoid(names: &[String], table: &[Vec<usize>]) -> Result<Arc<Groupoid>> {
    let n = names.len();
    if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(Error::input("group table must be square and nonempty"));
    }
    for r in table {
        for &x in r {
            if x >= n {
                return Err(Error::input("group table entry out of range"));
            }
        }
    }
    // element 0 must be the identity
    for a in 0..n {
        if table[0][a] != a || table[a][0] != a {
            return Err(Error::input("element 0 is not a group identity"));
        }
    }
    let mut inverses_idx = vec![None; n];
    for a in 0..n {
        for b in 0..n {
            if table[a][b] == 0 && table[b][a] == 0 {
                inverses_idx[a] = Some(b);
            }
        }
    }
    if inverses_idx.iter().any(|x| x.is_none()) {
        return Err(Error::input("group table has a non-invertible element"));
    }
    let objects = vec!["*".to_string()];
    let morphisms: Vec<(String, String, String)> = names
        .iter()
        .map(|g| (g.clone(), "*".to_string(), "*".to_string()))
        .collect();
    let identities = vec![names[0].clone()];
    let mut compose = Vec::new();
    for a in 0..n {
        for b in 0..n {
            compose.push((
                names[a].clone(),
                names[b].clone(),
                names[table[a][b]].clone(),
            ));
        }
    }
    let inverses: Vec<(String, String)> = (0..n)
        .map(|a| (names[a].clone(), names[inverses_idx[a].unwrap()].clone()))
        .collect();
    Groupoid::from_parts(objects, morphisms, identities, &compose, &inverses)?.validated()
}

/// The groupoid I x G x I with `(z,h,y)(y,g,x) = (z,hg,x)`.
pub fn product_groupoid(n: usize, names: &[String], table: &[Vec<usize>]) -> Result<Arc<Groupoid>> {
    if n == 0 {
        return Err(Error::input("product groupoid needs a nonempty index set"));
    }
    // reuse the group checks
    group_groupoid(names, table)?;
    let g = names.len();
    let objects: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let name = |y: usize, h: usize, x: usize| format!("({y},{},{x})", names[h]);
    let mut morphisms = Vec::new();
    for y in 1..=n {
        for h in 0..g {
            for x in 1..=n {
                morphisms.push((name(y, h, x), x.to_string(), y.to_string()));
            }
        }
    }
    let identities: Vec<String> = (1..=n).map(|x| name(x, 0, x)).collect();
    let mut compose = Vec::new();
    let mut inverses = Vec::new();
    let mut inv_of = vec![0usize; g];
    for a in 0..g {
        for b in 0..g {
            if table[a][b] == 0 {
                inv_of[a] = b;
            }
        }
    }
    for z in 1..=n {
        for h in 0..g {
            for y in 1..=n {
                inverses.push((name(z, h, y), name(y, inv_of[h], z)));
                for k in 0..g {
                    for x in 1..=n {
                        compose.push((name(z, h, y), name(y, k, x), name(z, table[h][k], x)));
                    }
                }
            }
        }
    }
    Groupoid::from_parts(objects, morphisms, identities, &compose, &inverses)?.validated()
}

/// Multiplication table of Z/n with elements named g0..g{n-1}.
pub fn cyclic_group_table(n: usize) -> (Vec<String>, Vec<Vec<usize>>) {
    let names = (0..n).map(|i| format!("g{i}")).collect();
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    (names, table)
}
