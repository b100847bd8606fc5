//! Double groupoids with connections.
//!
//! A square has edges `a` (left), `b` (bottom), `c` (top), `d` (right):
//!
//! ```text
//!   TL --c--> TR
//!   |          |
//!   a          d
//!   v          v
//!   BL --b--> BR
//! ```
//!
//! Direction 1 runs downward (`α +₁ β` puts `β` below `α`, needs
//! `b_α = c_β`), direction 2 rightward (`α +₂ γ` needs `d_α = a_γ`).

pub mod boxg;
pub mod cube;
pub mod lambda;
pub mod laws;

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

use crate::groupoid::FiniteGroupoid;

pub use boxg::BoxG;
pub use lambda::{LSq, Lambda};

/// Edges in the order `[a, b, c, d]`.
pub type Edges = [usize; 4];

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum DgError {
    #[error("crossed module is invalid: {0}")]
    InvalidXMod(String),
    #[error("array is empty or ragged")]
    BadShape,
    #[error("cells {0:?} and {1:?} do not match")]
    Incompatible((usize, usize), (usize, usize)),
    #[error("not a square of this double groupoid")]
    NotSquare,
    #[error("cube shell faces do not match: {0}")]
    BadShell(String),
}

pub trait DoubleGroupoid {
    type Sq: Clone + Eq + Hash + Debug;

    fn name(&self) -> String;
    /// The common edge groupoid of both directions.
    fn edges(&self) -> &FiniteGroupoid;
    fn squares(&self) -> Vec<Self::Sq>;
    fn faces(&self, s: &Self::Sq) -> Edges;
    fn compose1(&self, x: &Self::Sq, y: &Self::Sq) -> Option<Self::Sq>;
    fn compose2(&self, x: &Self::Sq, y: &Self::Sq) -> Option<Self::Sq>;
    /// `(1; 1, x, x, 1)`, identity for `+₁`.
    fn eps1(&self, x: usize) -> Self::Sq;
    /// `(1; y, 1, 1, y)`, identity for `+₂`.
    fn eps2(&self, y: usize) -> Self::Sq;
    fn inv1(&self, s: &Self::Sq) -> Self::Sq;
    fn inv2(&self, s: &Self::Sq) -> Self::Sq;
    /// `Γ⁻(x)`: left and top identities, bottom and right `x`.
    fn gamma_minus(&self, x: usize) -> Self::Sq;
    /// `Γ⁺(x)`: left and top `x`, bottom and right identities.
    fn gamma_plus(&self, x: usize) -> Self::Sq;
    fn is_thin(&self, s: &Self::Sq) -> bool;
    fn show(&self, s: &Self::Sq) -> String;

    /// `(1; 1, 1, x⁻¹, x)`, i.e. `−₁Γ⁻(x⁻¹)`.
    fn corner_lower(&self, x: usize) -> Self::Sq {
        let g = self.edges();
        self.inv1(&self.gamma_minus(g.inv(x)))
    }

    /// `(1; x, x⁻¹, 1, 1)`, i.e. `−₂Γ⁻(x)`.
    fn corner_upper(&self, x: usize) -> Self::Sq {
        self.inv2(&self.gamma_minus(x))
    }

    /// Rotation through the 3×3 array of connections and identities around `s`.
    fn rotate(&self, s: &Self::Sq) -> Self::Sq {
        let g = self.edges();
        let [a, b, c, d] = self.faces(s);
        let arr = vec![
            vec![self.eps1(g.inv(a)), self.gamma_minus(c), self.eps2(c)],
            vec![self.corner_lower(a), s.clone(), self.corner_upper(d)],
            vec![self.eps2(b), self.gamma_plus(b), self.eps1(g.inv(d))],
        ];
        compose_array(self, &arr).expect("rotation array is compatible")
    }
}

fn check_shape<S>(arr: &[Vec<S>]) -> Result<(usize, usize), DgError> {
    let rows = arr.len();
    let cols = arr.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 || arr.iter().any(|r| r.len() != cols) {
        return Err(DgError::BadShape);
    }
    Ok((rows, cols))
}

/// Checks neighbouring faces, naming the first mismatched pair.
pub fn check_array<D: DoubleGroupoid + ?Sized>(d: &D, arr: &[Vec<D::Sq>]) -> Result<(), DgError> {
    let (rows, cols) = check_shape(arr)?;
    for i in 0..rows {
        for j in 0..cols {
            let f = d.faces(&arr[i][j]);
            if j + 1 < cols && f[3] != d.faces(&arr[i][j + 1])[0] {
                return Err(DgError::Incompatible((i, j), (i, j + 1)));
            }
            if i + 1 < rows && f[1] != d.faces(&arr[i + 1][j])[2] {
                return Err(DgError::Incompatible((i, j), (i + 1, j)));
            }
        }
    }
    Ok(())
}

/// Rows with `+₂` first, then the row results with `+₁`.
pub fn compose_array<D: DoubleGroupoid + ?Sized>(d: &D, arr: &[Vec<D::Sq>]) -> Result<D::Sq, DgError> {
    check_array(d, arr)?;
    let rows: Vec<D::Sq> = arr
        .iter()
        .map(|r| r[1..].iter().fold(r[0].clone(), |acc, s| d.compose2(&acc, s).expect("checked")))
        .collect();
    Ok(rows[1..].iter().fold(rows[0].clone(), |acc, s| d.compose1(&acc, s).expect("checked")))
}

/// Columns with `+₁` first, then `+₂`.
pub fn compose_array_cols<D: DoubleGroupoid + ?Sized>(d: &D, arr: &[Vec<D::Sq>]) -> Result<D::Sq, DgError> {
    let (rows, cols) = check_shape(arr)?;
    check_array(d, arr)?;
    let colv: Vec<D::Sq> = (0..cols)
        .map(|j| (1..rows).fold(arr[0][j].clone(), |acc, i| d.compose1(&acc, &arr[i][j]).expect("checked")))
        .collect();
    Ok(colv[1..].iter().fold(colv[0].clone(), |acc, s| d.compose2(&acc, s).expect("checked")))
}

/// Bracketed layout, one row per line.
pub fn show_array<D: DoubleGroupoid + ?Sized>(d: &D, arr: &[Vec<D::Sq>]) -> String {
    let rows: Vec<String> = arr
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|s| d.show(s)).collect::<Vec<_>>().join("  ")))
        .collect();
    format!("[{}]", rows.join("\n "))
}
