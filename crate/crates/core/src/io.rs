//! JSON formats for lattices, set systems, weighted graphs and matrices.
//! Element indices are 0-based.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::construct::{SetSystem, WeightedGraph};
use crate::error::{Error, Result};
use crate::field::FieldMatrix;
use crate::matroid::Matroid;
use crate::subset::GroundSubset;
use crate::zlattice::{matroid_from_lattice, CyclicFlatLattice};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberJson {
    pub elements: Vec<usize>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    pub members: Vec<MemberJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystemJson {
    pub n: usize,
    pub k: usize,
    pub flats: Vec<MemberJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub m: usize,
    pub edges: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub p: u32,
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformJson {
    pub n: usize,
    pub k: usize,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

fn members_to_pairs(n: usize, ms: &[MemberJson]) -> Result<Vec<(GroundSubset, usize)>> {
    ms.iter().map(|m| Ok((GroundSubset::from_elements(n, m.elements.iter().copied())?, m.rank))).collect()
}

impl LatticeJson {
    pub fn from_lattice(z: &CyclicFlatLattice) -> Self {
        LatticeJson {
            n: z.n(),
            members: z.members().iter().map(|m| MemberJson { elements: m.set.elements(), rank: m.rank }).collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<CyclicFlatLattice> {
        CyclicFlatLattice::new(self.n, members_to_pairs(self.n, &self.members)?)
    }
}

impl SetSystemJson {
    pub fn from_system(s: &SetSystem) -> Self {
        SetSystemJson {
            n: s.n(),
            k: s.k(),
            flats: s.flats().iter().map(|f| MemberJson { elements: f.set.elements(), rank: f.rank }).collect(),
        }
    }

    pub fn to_system(&self) -> Result<SetSystem> {
        SetSystem::new(self.n, self.k, members_to_pairs(self.n, &self.flats)?)
    }
}

impl GraphJson {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        GraphJson { m: g.m(), edges: g.edges().iter().map(|&(a, b, w)| [a, b, w]).collect() }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph> {
        WeightedGraph::new(self.m, self.edges.iter().map(|e| (e[0], e[1], e[2])).collect())
    }
}

impl MatrixJson {
    pub fn from_matrix(a: &FieldMatrix) -> Self {
        MatrixJson { p: a.prime(), k: a.nrows(), n: a.ncols(), rows: a.row_vecs() }
    }

    pub fn to_matrix(&self) -> Result<FieldMatrix> {
        if self.rows.len() != self.k {
            return Err(Error::Format(format!("k = {} but {} rows given", self.k, self.rows.len())));
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() != self.n) {
            return Err(Error::Format(format!("row {i} does not have n = {} entries", self.n)));
        }
        FieldMatrix::new(self.p, self.rows.clone())
    }
}

pub fn lattice_from_json(s: &str) -> Result<CyclicFlatLattice> {
    serde_json::from_str::<LatticeJson>(s).map_err(parse_err)?.to_lattice()
}

pub fn lattice_to_json(z: &CyclicFlatLattice) -> String {
    serde_json::to_string_pretty(&LatticeJson::from_lattice(z)).expect("serializable")
}

pub fn set_system_from_json(s: &str) -> Result<SetSystem> {
    serde_json::from_str::<SetSystemJson>(s).map_err(parse_err)?.to_system()
}

pub fn set_system_to_json(sys: &SetSystem) -> String {
    serde_json::to_string_pretty(&SetSystemJson::from_system(sys)).expect("serializable")
}

pub fn graph_from_json(s: &str) -> Result<WeightedGraph> {
    serde_json::from_str::<GraphJson>(s).map_err(parse_err)?.to_graph()
}

pub fn graph_to_json(g: &WeightedGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("serializable")
}

pub fn matrix_from_json(s: &str) -> Result<FieldMatrix> {
    serde_json::from_str::<MatrixJson>(s).map_err(parse_err)?.to_matrix()
}

pub fn matrix_to_json(a: &FieldMatrix) -> String {
    serde_json::to_string_pretty(&MatrixJson::from_matrix(a)).expect("serializable")
}

/// Any of the accepted matroid descriptions.
#[derive(Debug, Clone)]
pub enum MatroidInput {
    Lattice(CyclicFlatLattice),
    SetSystem(SetSystem),
    Matrix(FieldMatrix),
    Uniform { n: usize, k: usize },
}

/// Detects the format by its keys: `members` (lattice), `flats` (set
/// system), `rows` (matrix) or `uniform`.
pub fn parse_matroid_input(s: &str) -> Result<MatroidInput> {
    let v: Value = serde_json::from_str(s).map_err(parse_err)?;
    let obj = v.as_object().ok_or_else(|| Error::Format("expected a JSON object".into()))?;
    if obj.contains_key("members") {
        Ok(MatroidInput::Lattice(serde_json::from_value::<LatticeJson>(v).map_err(parse_err)?.to_lattice()?))
    } else if obj.contains_key("flats") {
        Ok(MatroidInput::SetSystem(serde_json::from_value::<SetSystemJson>(v).map_err(parse_err)?.to_system()?))
    } else if obj.contains_key("rows") {
        Ok(MatroidInput::Matrix(serde_json::from_value::<MatrixJson>(v).map_err(parse_err)?.to_matrix()?))
    } else if let Some(u) = obj.get("uniform") {
        let u: UniformJson = serde_json::from_value(u.clone()).map_err(parse_err)?;
        Ok(MatroidInput::Uniform { n: u.n, k: u.k })
    } else {
        Err(Error::Format("unrecognized matroid description (expected members, flats, rows or uniform)".into()))
    }
}

impl MatroidInput {
    /// Builds the matroid; lattices are checked against the axioms and set
    /// systems go through the general construction.
    pub fn into_matroid(self) -> Result<Matroid> {
        match self {
            MatroidInput::Lattice(z) => matroid_from_lattice(z),
            MatroidInput::SetSystem(s) => crate::construct::general_construction(&s),
            MatroidInput::Matrix(a) => Matroid::from_matrix(a),
            MatroidInput::Uniform { n, k } => Matroid::uniform(n, k),
        }
    }
}
