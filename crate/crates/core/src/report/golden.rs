//! Printed tables and formulas, embedded from the workspace `golden/` directory.

use serde::{Deserialize, Serialize};

use crate::jetcalc::{equivalence_coords, VectorField};
use crate::symexpr::{parse, Expr, ParseError, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub stage: String,
    #[serde(default)]
    pub parameter: Option<String>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedFlow {
    pub name: String,
    pub map: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flows {
    pub stage: String,
    pub parameter: String,
    pub coordinates: Vec<String>,
    pub flows: Vec<PrintedFlow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedField {
    pub name: String,
    pub field: String,
    #[serde(default)]
    pub sources: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimal {
    pub stage: String,
    pub representatives: Vec<NamedField>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projections {
    pub stage: String,
    pub zero: Vec<String>,
    pub projections: Vec<NamedField>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub z: String,
    pub regime: String,
    pub vanished: Vec<String>,
    pub lambda: String,
    #[serde(rename = "E")]
    pub e: String,
    #[serde(rename = "H")]
    pub h: String,
    pub operators: Vec<String>,
}

impl Row {
    pub fn z_index(&self) -> usize {
        self.z[1..].parse().expect("Z<n>")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table3 {
    pub stage: String,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseStep {
    pub generator: String,
    pub parameter: String,
    pub clears: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Printed {
    pub stage: String,
    #[serde(rename = "Y4")]
    pub y4: String,
    pub characteristic: String,
    #[serde(rename = "I1_Z23")]
    pub i1_z23: String,
    pub case_1a: CaseStep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Allowed {
    pub id: String,
    pub site: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Allowlist {
    pub allowlist: Vec<Allowed>,
}

fn load<T: serde::de::DeserializeOwned>(src: &str) -> T {
    serde_json::from_str(src).expect("embedded golden file is valid")
}

pub fn table1() -> Grid {
    load(include_str!("../../../../golden/table1.json"))
}

pub fn table2() -> Grid {
    load(include_str!("../../../../golden/table2.json"))
}

pub fn flows() -> Flows {
    load(include_str!("../../../../golden/flows.json"))
}

pub fn optimal() -> Optimal {
    load(include_str!("../../../../golden/optimal.json"))
}

pub fn projections() -> Projections {
    load(include_str!("../../../../golden/projections.json"))
}

pub fn table3() -> Table3 {
    load(include_str!("../../../../golden/table3.json"))
}

pub fn printed() -> Printed {
    load(include_str!("../../../../golden/printed.json"))
}

pub fn allowlist() -> Allowlist {
    load(include_str!("../../../../golden/deviations.json"))
}

/// Read `c1*d_t + c2*d_x + ...` into a field on `(t, x, u, E, H)`.
pub fn parse_field(src: &str) -> Result<VectorField, ParseError> {
    let e = parse(src)?;
    Ok(equivalence_coords()
        .iter()
        .fold(VectorField::new(equivalence_coords()), |y, c| {
            let d = Symbol::named(&format!("d_{}", c.name));
            y.with(&c.name, e.diff(&d).normalize())
        }))
}

/// How often each operator token occurs in a printed field; a repeated token
/// marks an unsimplified expansion.
pub fn repeated_operators(src: &str) -> Vec<String> {
    let mut out = vec![];
    for c in ["t", "x", "u", "E", "H"] {
        let tok = format!("d_{c}");
        if src.matches(&tok).count() > 1 {
            out.push(tok);
        }
    }
    out
}

/// Replace bare `Phi`/`Psi` by their values at `lambda`.
pub fn bind_arbitrary(e: &Expr, lambda: &Expr) -> Expr {
    e.subs(&Expr::sym("Phi"), &crate::invclass::phi(lambda))
        .subs(&Expr::sym("Psi"), &crate::invclass::psi(lambda))
        .normalize()
}
