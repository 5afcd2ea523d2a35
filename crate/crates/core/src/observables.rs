//! Observable dictionaries: maps from state space into the space the operator
//! is fitted in.
//!
//! The identity dictionary reproduces plain DMD; `StatePlusConstant` appends
//! an affine coordinate; `Polynomial(d)` lifts into all monomials of total
//! degree 1..=d (no constant term) in graded lexicographic order, which keeps
//! label order stable for block partitioning downstream.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dictionary family descriptor, as it appears in fit-config files:
/// `"identity"`, `{"polynomial": d}`, or `"state_plus_constant"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DictionaryKind {
    Identity,
    Polynomial(usize),
    StatePlusConstant,
}

impl Default for DictionaryKind {
    fn default() -> Self {
        DictionaryKind::Identity
    }
}

/// A concrete dictionary over a fixed, ordered set of input variables.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableDictionary {
    kind: DictionaryKind,
    input_ids: Vec<String>,
    labels: Vec<String>,
    /// Exponent vectors per output coordinate, polynomial kind only.
    monomials: Vec<Vec<u32>>,
}

impl ObservableDictionary {
    /// Build a dictionary of the given kind over ordered variable ids.
    pub fn new(kind: DictionaryKind, variable_ids: &[String]) -> Result<Self> {
        if variable_ids.is_empty() {
            return Err(Error::Empty("variable id list"));
        }
        let (labels, monomials) = match &kind {
            DictionaryKind::Identity => (variable_ids.to_vec(), Vec::new()),
            DictionaryKind::StatePlusConstant => {
                let mut labels = variable_ids.to_vec();
                labels.push("1".to_string());
                (labels, Vec::new())
            }
            DictionaryKind::Polynomial(degree) => {
                if *degree < 2 {
                    return Err(Error::Config(format!(
                        "polynomial dictionary degree must be at least 2, got {degree}"
                    )));
                }
                let monomials = graded_lex_monomials(variable_ids.len(), *degree);
                let labels = monomials
                    .iter()
                    .map(|exps| monomial_label(variable_ids, exps))
                    .collect();
                (labels, monomials)
            }
        };
        Ok(Self {
            kind,
            input_ids: variable_ids.to_vec(),
            labels,
            monomials,
        })
    }

    pub fn kind(&self) -> &DictionaryKind {
        &self.kind
    }

    pub fn input_dim(&self) -> usize {
        self.input_ids.len()
    }

    pub fn output_dim(&self) -> usize {
        self.labels.len()
    }

    /// Names of the output coordinates, one per row of a lifted matrix.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn input_ids(&self) -> &[String] {
        &self.input_ids
    }

    /// Apply the dictionary columnwise: column j of the result is
    /// `psi(column j of states)`.
    pub fn lift(&self, states: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if states.nrows() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                context: "lift: state row count".into(),
                expected: self.input_dim(),
                got: states.nrows(),
            });
        }
        crate::solver::ensure_finite(states, "state matrix")?;
        let m = states.ncols();
        let lifted = match &self.kind {
            DictionaryKind::Identity => states.clone(),
            DictionaryKind::StatePlusConstant => {
                let mut out = DMatrix::zeros(self.output_dim(), m);
                out.view_mut((0, 0), (self.input_dim(), m)).copy_from(states);
                out.row_mut(self.input_dim()).fill(1.0);
                out
            }
            DictionaryKind::Polynomial(_) => {
                let mut out = DMatrix::zeros(self.output_dim(), m);
                for j in 0..m {
                    let col = states.column(j);
                    for (r, exps) in self.monomials.iter().enumerate() {
                        let mut v = 1.0;
                        for (i, &e) in exps.iter().enumerate() {
                            if e > 0 {
                                v *= col[i].powi(e as i32);
                            }
                        }
                        out[(r, j)] = v;
                    }
                }
                out
            }
        };
        Ok(lifted)
    }
}

/// Exponent vectors of all monomials with total degree 1..=max_degree,
/// degree-major, lexicographically descending within a degree. For two
/// variables and degree 2: x1, x2, x1^2, x1*x2, x2^2.
fn graded_lex_monomials(n_vars: usize, max_degree: usize) -> Vec<Vec<u32>> {
    fn fill(slot: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let n = current.len();
        if slot == n - 1 {
            current[slot] = remaining;
            out.push(current.clone());
            return;
        }
        for e in (0..=remaining).rev() {
            current[slot] = e;
            fill(slot + 1, remaining - e, current, out);
        }
        current[slot] = 0;
    }

    let mut out = Vec::new();
    let mut current = vec![0u32; n_vars];
    for degree in 1..=max_degree as u32 {
        fill(0, degree, &mut current, &mut out);
    }
    out
}

fn monomial_label(ids: &[String], exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (id, &e) in ids.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(id.clone()),
            _ => parts.push(format!("{id}^{e}")),
        }
    }
    parts.join("*")
}
