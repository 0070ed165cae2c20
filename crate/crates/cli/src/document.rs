//! The ring description document: a UTF-8 JSON schema covering the groupoid,
//! the graded basis, the sparse product table, the object units, and optional
//! module and endomorphism blocks. Emission is canonical (sorted entries,
//! fixed key order) so reports and documents are golden-file stable.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};

use grgrad_core::exactla::{Fp, Matrix};
use grgrad_core::groupoid::{
    cyclic_group_table, group_groupoid, pair_groupoid, product_groupoid, Groupoid,
};
use grgrad_core::module::GradedModule;
use grgrad_core::ring::{BasisVec, GradedRing};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupBlock {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductBlock {
    pub size: usize,
    pub group: GroupBlock,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupoidBlock {
    Pair {
        pair: usize,
    },
    Group {
        group: GroupBlock,
    },
    Product {
        product: ProductBlock,
    },
    Explicit {
        objects: Vec<String>,
        morphisms: Vec<MorphismDecl>,
        identities: Vec<String>,
        composition: Vec<[String; 3]>,
        inverses: Vec<[String; 2]>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisDecl {
    pub name: String,
    pub degree: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleBlock {
    pub name: String,
    pub basis: Vec<BasisDecl>,
    /// triples [module basis, ring basis, module basis, coefficient]
    pub action: Vec<(String, String, String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndoBlock {
    pub name: String,
    pub module: String,
    pub degree: String,
    /// rows = images of the module basis, in module basis coordinates
    pub matrix: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingDocument {
    pub prime: u32,
    pub groupoid: GroupoidBlock,
    pub basis: Vec<BasisDecl>,
    /// sparse triples [left, right, result, coefficient]
    pub products: Vec<(String, String, String, u32)>,
    /// object name -> [(basis name, coefficient)]
    pub units: BTreeMap<String, Vec<(String, u32)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub endomorphisms: Vec<EndoBlock>,
}

impl RingDocument {
    pub fn parse(text: &str) -> anyhow::Result<RingDocument> {
        serde_json::from_str(text).context("malformed ring document")
    }

    /// Canonical serialization: sorted product/action triples, sorted maps.
    pub fn emit(&self) -> anyhow::Result<String> {
        let mut doc = self.clone();
        doc.products.sort();
        for m in &mut doc.modules {
            m.action.sort();
        }
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    pub fn build_groupoid(&self) -> anyhow::Result<Arc<Groupoid>> {
        let g = match &self.groupoid {
            GroupoidBlock::Pair { pair } => pair_groupoid(*pair)?,
            GroupoidBlock::Group { group } => group_groupoid(&group.elements, &group.table)?,
            GroupoidBlock::Product { product } => {
                product_groupoid(product.size, &product.group.elements, &product.group.table)?
            }
            GroupoidBlock::Explicit {
                objects,
                morphisms,
                identities,
                composition,
                inverses,
            } => {
                let mors: Vec<(String, String, String)> = morphisms
                    .iter()
                    .map(|m| (m.name.clone(), m.source.clone(), m.target.clone()))
                    .collect();
                let comp: Vec<(String, String, String)> = composition
                    .iter()
                    .map(|c| (c[0].clone(), c[1].clone(), c[2].clone()))
                    .collect();
                let invs: Vec<(String, String)> = inverses
                    .iter()
                    .map(|c| (c[0].clone(), c[1].clone()))
                    .collect();
                Groupoid::from_parts(objects.clone(), mors, identities.clone(), &comp, &invs)?
                    .validated()?
            }
        };
        Ok(g)
    }

    pub fn build_ring(&self) -> anyhow::Result<Arc<GradedRing>> {
        let g = self.build_groupoid()?;
        let field = Fp::new(self.prime)?;
        let mut basis = Vec::new();
        let mut index = BTreeMap::new();
        for b in &self.basis {
            let degree = g
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
        for (l, r, out, c) in &self.products {
            products.push((look(l)?, look(r)?, look(out)?, *c));
        }
        let mut units = Vec::new();
        for (obj, coords) in &self.units {
            let e = g
                .object_by_name(obj)
                .ok_or_else(|| anyhow!("unknown object {obj}"))?;
            let mut cs = Vec::new();
            for (name, c) in coords {
                cs.push((look(name)?, *c));
            }
            units.push((e, cs));
        }
        let ring = GradedRing::from_sparse(g, field, basis, &products, &units)?.validated()?;
        Ok(ring)
    }

    /// Builds a named module block, or the regular module for "regular".
    pub fn build_module(&self, ring: &Arc<GradedRing>, name: &str) -> anyhow::Result<GradedModule> {
        if name == "regular" {
            return Ok(GradedModule::regular(ring.clone()));
        }
        let block = self
            .modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| anyhow!("no module named {name} in the document"))?;
        let g = ring.groupoid();
        let mut basis = Vec::new();
        let mut index = BTreeMap::new();
        for b in &block.basis {
            let degree = g
                .morphism_by_name(&b.degree)
                .ok_or_else(|| anyhow!("unknown degree {}", b.degree))?;
            index.insert(b.name.clone(), basis.len());
            basis.push(BasisVec {
                name: b.name.clone(),
                degree,
            });
        }
        let rlook = |name: &str| -> anyhow::Result<usize> {
            (0..ring.dim())
                .find(|&i| ring.basis_name(i) == name)
                .ok_or_else(|| anyhow!("unknown ring basis name {name}"))
        };
        let mlook = |name: &str| -> anyhow::Result<usize> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| anyhow!("unknown module basis name {name}"))
        };
        let dim = basis.len();
        let mut action = vec![vec![0u32; dim]; dim * ring.dim()];
        for (m, r, out, c) in &block.action {
            let mi = mlook(m)?;
            let ri = rlook(r)?;
            let oi = mlook(out)?;
            action[mi * ring.dim() + ri][oi] = c % self.prime;
        }
        let module = GradedModule::from_parts(ring.clone(), basis, action)?.validated()?;
        Ok(module)
    }

    pub fn build_endomorphism(
        &self,
        ring: &Arc<GradedRing>,
        name: &str,
    ) -> anyhow::Result<(GradedModule, Matrix, grgrad_core::groupoid::MorId)> {
        let block = self
            .endomorphisms
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| anyhow!("no endomorphism named {name} in the document"))?;
        let module = self.build_module(ring, &block.module)?;
        let degree = ring
            .groupoid()
            .morphism_by_name(&block.degree)
            .ok_or_else(|| anyhow!("unknown degree {}", block.degree))?;
        if block.matrix.len() != module.dim() {
            bail!(
                "endomorphism matrix has {} rows, module has dimension {}",
                block.matrix.len(),
                module.dim()
            );
        }
        let matrix = Matrix::from_rows(ring.field(), block.matrix.clone(), module.dim())?;
        Ok((module, matrix, degree))
    }
}

/// Serializes a core ring back into a document, with the given groupoid
/// shorthand block.
pub fn document_from_ring(ring: &GradedRing, groupoid: GroupoidBlock) -> RingDocument {
    let g = ring.groupoid();
    let basis: Vec<BasisDecl> = (0..ring.dim())
        .map(|i| BasisDecl {
            name: ring.basis_name(i).to_string(),
            degree: g.morphism_name(ring.degree_of_basis(i)).to_string(),
        })
        .collect();
    let mut products = Vec::new();
    for i in 0..ring.dim() {
        for j in 0..ring.dim() {
            for (k, &c) in ring.basis_product(i, j).iter().enumerate() {
                if c != 0 {
                    products.push((
                        ring.basis_name(i).to_string(),
                        ring.basis_name(j).to_string(),
                        ring.basis_name(k).to_string(),
                        c,
                    ));
                }
            }
        }
    }
    products.sort();
    let mut units = BTreeMap::new();
    for e in g.objects() {
        let coords: Vec<(String, u32)> = ring
            .unit(e)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (ring.basis_name(i).to_string(), c))
            .collect();
        units.insert(g.object_name(e).to_string(), coords);
    }
    RingDocument {
        prime: ring.field().p(),
        groupoid,
        basis,
        products,
        units,
        modules: Vec::new(),
        endomorphisms: Vec::new(),
    }
}

/// The explicit groupoid block of a core groupoid (used when no shorthand
/// applies).
pub fn explicit_groupoid_block(g: &Groupoid) -> GroupoidBlock {
    let objects: Vec<String> = g.objects().map(|e| g.object_name(e).to_string()).collect();
    let morphisms: Vec<MorphismDecl> = g
        .morphisms()
        .map(|m| MorphismDecl {
            name: g.morphism_name(m).to_string(),
            source: g.object_name(g.source(m)).to_string(),
            target: g.object_name(g.target(m)).to_string(),
        })
        .collect();
    let identities: Vec<String> = g
        .objects()
        .map(|e| g.morphism_name(g.identity(e)).to_string())
        .collect();
    let mut composition = Vec::new();
    for a in g.morphisms() {
        for b in g.morphisms() {
            if let Some(c) = g.compose(a, b) {
                composition.push([
                    g.morphism_name(a).to_string(),
                    g.morphism_name(b).to_string(),
                    g.morphism_name(c).to_string(),
                ]);
            }
        }
    }
    let inverses: Vec<[String; 2]> = g
        .morphisms()
        .map(|m| {
            [
                g.morphism_name(m).to_string(),
                g.morphism_name(g.inverse(m)).to_string(),
            ]
        })
        .collect();
    GroupoidBlock::Explicit {
        objects,
        morphisms,
        identities,
        composition,
        inverses,
    }
}

/// Cyclic-group groupoid block for documents.
pub fn cyclic_group_block(n: usize) -> GroupBlock {
    let (elements, table) = cyclic_group_table(n);
    GroupBlock { elements, table }
}
