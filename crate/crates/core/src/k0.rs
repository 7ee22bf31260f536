//! Decategorification to integer matrices on `K_0`.
//!
//! The shift acts by `-1`, a cotwist with `K_0` images `f` and `g` acts by
//! `f g - 1`, and decoration symbols act by assigned invertible matrices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::curves::{LineField, LoopLabel};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::schober::SchoberDatum;
use crate::word::{FunctorWord, Symbol};

/// `K_0` images of the symbols of a word, on a stalk of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Assignment {
    rank: usize,
    matrices: BTreeMap<Symbol, (IntMatrix, IntMatrix)>,
}

impl K0Assignment {
    pub fn new(rank: usize) -> Self {
        Self { rank, matrices: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Assigns an invertible `rank x rank` matrix to `symbol`.
    pub fn with_matrix(mut self, symbol: Symbol, m: IntMatrix) -> Result<Self> {
        if m.shape() != (self.rank, self.rank) {
            return Err(Error::ShapeMismatch(format!(
                "matrix for {symbol} is {}x{}, stalk rank is {}",
                m.rows(),
                m.cols(),
                self.rank
            )));
        }
        let inv = m.inverse()?;
        self.matrices.insert(symbol, (m, inv));
        Ok(self)
    }

    /// Assigns the cotwist `f g - 1` of a spherical functor with `K_0`
    /// images `f` (`rank x r`) and `g` (`r x rank`).
    pub fn with_cotwist(self, symbol: Symbol, f: &IntMatrix, g: &IntMatrix) -> Result<Self> {
        if f.rows() != self.rank || g.cols() != self.rank || f.cols() != g.rows() {
            return Err(Error::ShapeMismatch(format!(
                "f is {}x{} and g is {}x{} on a stalk of rank {}",
                f.rows(),
                f.cols(),
                g.rows(),
                g.cols(),
                self.rank
            )));
        }
        let t = f.mul(g)?.sub(&IntMatrix::identity(self.rank))?;
        self.with_matrix(symbol, t)
    }

    pub fn matrix(&self, symbol: &Symbol) -> Option<&IntMatrix> {
        self.matrices.get(symbol).map(|(m, _)| m)
    }
}

/// The matrix of a word: `(-1)^shift` times the letter matrices multiplied
/// in written order.
pub fn k0_of_word(w: &FunctorWord, a: &K0Assignment) -> Result<IntMatrix> {
    let sign = if w.shift().rem_euclid(2) == 0 { 1 } else { -1 };
    let mut out = IntMatrix::scalar(a.rank, sign);
    for l in w.letters() {
        let (m, inv) = a.matrices.get(&l.symbol).ok_or_else(|| Error::MissingK0(l.symbol.clone()))?;
        out = out.mul(if l.exp > 0 { m } else { inv })?;
    }
    Ok(out)
}

/// `K_0` images of the framed monodromy on the generating loops.
pub fn k0_monodromy_rep(s: &SchoberDatum, l: &LineField, a: &K0Assignment) -> Result<Vec<(LoopLabel, IntMatrix)>> {
    s.monodromy_rep(l)?.into_iter().map(|(label, w)| Ok((label, k0_of_word(&w, a)?))).collect()
}

fn require_unimodular(e: &IntMatrix) -> Result<()> {
    if !e.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} Euler form is not square", e.rows(), e.cols())));
    }
    if e.is_unimodular() {
        Ok(())
    } else {
        Err(Error::NonUnimodular)
    }
}

/// The Serre matrix `E^-1 E^T` of a unimodular Euler form, characterized by
/// `<x, S y> = <y, x>` for `<x, y> = x^T E y`.
pub fn serre_matrix(e: &IntMatrix) -> Result<IntMatrix> {
    require_unimodular(e)?;
    e.inverse()?.mul(&e.transpose())
}

/// `K_0` shadow of a weak right `n`-Calabi-Yau structure: `E^T = (-1)^n E`.
pub fn weak_cy_check(e: &IntMatrix, n: i64) -> Result<bool> {
    require_unimodular(e)?;
    let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(e.transpose() == e.scale(sign)?)
}

/// `K_0` shadow of a relative `m`-Calabi-Yau structure on a spherical
/// functor with `K_0` images `f` (`n x r`) and `g` (`r x n`) out of a
/// category with Euler form `e_d` (`r x r`):
/// `g f = 1 + (-1)^(1-m) S`.
///
/// This is a necessary condition only.
pub fn relative_cy_check(e_d: &IntMatrix, f: &IntMatrix, g: &IntMatrix, m: i64) -> Result<bool> {
    let s = serre_matrix(e_d)?;
    let r = e_d.rows();
    if f.cols() != r || g.rows() != r || g.cols() != f.rows() {
        return Err(Error::ShapeMismatch(format!(
            "E_D is {r}x{r}, f is {}x{}, g is {}x{}",
            f.rows(),
            f.cols(),
            g.rows(),
            g.cols()
        )));
    }
    let sign = if (1 - m).rem_euclid(2) == 0 { 1 } else { -1 };
    let rhs = IntMatrix::identity(r).add(&s.scale(sign)?)?;
    Ok(g.mul(f)? == rhs)
}

/// The restriction matrix of the local model at an `m`-valent vertex: row
/// `i` is `e_{i+1} - e_0`, so the kernel is spanned by the all-ones vector.
pub fn local_model_restriction_matrix(m: usize) -> Result<IntMatrix> {
    if m < 2 {
        return Err(Error::BadArgument(format!("valency {m} is below 2")));
    }
    let mut out = IntMatrix::zeros(m - 1, m);
    for i in 0..m - 1 {
        out.set(i, 0, -1);
        out.set(i, i + 1, 1);
    }
    Ok(out)
}

/// Whether every matrix fixes `eta`.
pub fn eta_invariance_check<'a>(rep: impl IntoIterator<Item = &'a IntMatrix>, eta: &[i64]) -> Result<bool> {
    for m in rep {
        if m.rows() != eta.len() {
            return Err(Error::DimensionMismatch { expected: m.rows(), got: eta.len() });
        }
        if m.mul_vec(eta)? != eta {
            return Ok(false);
        }
    }
    Ok(true)
}
