//! Brenner's transitive quadruples `B(u, ρ)` assembled from block recipes.
//!
//! Each subspace `K_i` is the row span of a block matrix whose blocks are
//! small expressions over the `r × r` identity `I`, zero `O`, nilpotent
//! Jordan cell `J`, the zero column `xi`, zero row `eta`, the last unit
//! column `b`, the first unit row `d`, and the scalars `0` / `1`. Products
//! are written by juxtaposition (`J b`, `d J^2`), `^T` transposes, and `+`
//! adds (`(J+I) b`).

use std::fmt;

use nalgebra::DMatrix;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::endo;
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, C64};
use crate::subspace::{defect, SubspaceSystem};
use crate::tolerance::TolerancePolicy;

pub type IntMatrix = DMatrix<i64>;

/// A parsed block expression.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockExpr {
    Identity,
    Zero,
    Jordan,
    Xi,
    Eta,
    BCol,
    DRow,
    Scalar(i64),
    Product(Vec<BlockExpr>),
    Sum(Vec<BlockExpr>),
    Power(Box<BlockExpr>, u32),
    Transpose(Box<BlockExpr>),
}

impl BlockExpr {
    pub fn parse(src: &str) -> Result<Self> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in block expression {src:?}")));
        }
        Ok(e)
    }

    /// Evaluates at Jordan-cell size `r`.
    pub fn eval(&self, r: usize) -> Result<IntMatrix> {
        Ok(match self {
            BlockExpr::Identity => IntMatrix::identity(r, r),
            BlockExpr::Zero => IntMatrix::zeros(r, r),
            BlockExpr::Jordan => IntMatrix::from_fn(r, r, |i, j| i64::from(j == i + 1)),
            BlockExpr::Xi => IntMatrix::zeros(r, 1),
            BlockExpr::Eta => IntMatrix::zeros(1, r),
            BlockExpr::BCol => IntMatrix::from_fn(r, 1, |i, _| i64::from(i + 1 == r)),
            BlockExpr::DRow => IntMatrix::from_fn(1, r, |_, j| i64::from(j == 0)),
            BlockExpr::Scalar(v) => IntMatrix::from_element(1, 1, *v),
            BlockExpr::Transpose(e) => e.eval(r)?.transpose(),
            BlockExpr::Power(e, k) => {
                let base = e.eval(r)?;
                if !base.is_square() {
                    return Err(Error::Parse("power of a non-square block".into()));
                }
                (0..*k).fold(IntMatrix::identity(base.nrows(), base.nrows()), |acc, _| acc * &base)
            }
            BlockExpr::Product(fs) => {
                let mut acc = fs[0].eval(r)?;
                for f in &fs[1..] {
                    let m = f.eval(r)?;
                    if acc.ncols() != m.nrows() {
                        return Err(Error::Parse(format!(
                            "product of {}x{} and {}x{} blocks",
                            acc.nrows(),
                            acc.ncols(),
                            m.nrows(),
                            m.ncols()
                        )));
                    }
                    acc *= m;
                }
                acc
            }
            BlockExpr::Sum(ts) => {
                let mut acc = ts[0].eval(r)?;
                for t in &ts[1..] {
                    let m = t.eval(r)?;
                    if acc.shape() != m.shape() {
                        return Err(Error::Parse("sum of differently shaped blocks".into()));
                    }
                    acc += m;
                }
                acc
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Atom(BlockExpr),
    Caret,
    Plus,
    Open,
    Close,
    Num(u32),
    T,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let after_caret = matches!(out.last(), Some(Tok::Caret));
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let v: u32 = text.parse().map_err(|_| Error::Parse(format!("bad number {text:?}")))?;
            out.push(if after_caret {
                Tok::Num(v)
            } else {
                Tok::Atom(BlockExpr::Scalar(i64::from(v)))
            });
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "T" if after_caret => Tok::T,
                "I" => Tok::Atom(BlockExpr::Identity),
                "O" => Tok::Atom(BlockExpr::Zero),
                "J" => Tok::Atom(BlockExpr::Jordan),
                "xi" => Tok::Atom(BlockExpr::Xi),
                "eta" => Tok::Atom(BlockExpr::Eta),
                "b" => Tok::Atom(BlockExpr::BCol),
                "d" => Tok::Atom(BlockExpr::DRow),
                _ => return Err(Error::Parse(format!("unknown block symbol {word:?}"))),
            };
            out.push(tok);
            continue;
        }
        out.push(match ch {
            '^' => Tok::Caret,
            '+' => Tok::Plus,
            '(' => Tok::Open,
            ')' => Tok::Close,
            _ => return Err(Error::Parse(format!("unexpected character {ch:?}"))),
        });
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn sum(&mut self) -> Result<BlockExpr> {
        let mut terms = vec![self.product()?];
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            terms.push(self.product()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            BlockExpr::Sum(terms)
        })
    }

    fn product(&mut self) -> Result<BlockExpr> {
        let mut factors = vec![self.factor()?];
        while matches!(self.peek(), Some(Tok::Atom(_)) | Some(Tok::Open)) {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            BlockExpr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<BlockExpr> {
        let mut base = match self.tokens.get(self.pos).cloned() {
            Some(Tok::Atom(a)) => {
                self.pos += 1;
                a
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                inner
            }
            other => return Err(Error::Parse(format!("expected a block, found {other:?}"))),
        };
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            base = match self.tokens.get(self.pos).cloned() {
                Some(Tok::Num(k)) => BlockExpr::Power(Box::new(base), k),
                Some(Tok::T) => BlockExpr::Transpose(Box::new(base)),
                other => return Err(Error::Parse(format!("bad exponent {other:?}"))),
            };
            self.pos += 1;
        }
        Ok(base)
    }
}

/// Evaluates a block matrix given as rows of block expressions.
pub fn assemble(rows: &[&[&str]], r: usize) -> Result<IntMatrix> {
    let mut bands = Vec::with_capacity(rows.len());
    for row in rows {
        let blocks = row
            .iter()
            .map(|s| BlockExpr::parse(s)?.eval(r))
            .collect::<Result<Vec<_>>>()?;
        let h = blocks[0].nrows();
        if blocks.iter().any(|b| b.nrows() != h) {
            return Err(Error::Parse(format!("block heights differ in row {row:?}")));
        }
        let w: usize = blocks.iter().map(|b| b.ncols()).sum();
        let mut band = IntMatrix::zeros(h, w);
        let mut col = 0;
        for b in &blocks {
            band.view_mut((0, col), b.shape()).copy_from(b);
            col += b.ncols();
        }
        bands.push(band);
    }
    let w = bands[0].ncols();
    if bands.iter().any(|b| b.ncols() != w) {
        return Err(Error::Parse("block rows have different widths".into()));
    }
    let h: usize = bands.iter().map(|b| b.nrows()).sum();
    let mut out = IntMatrix::zeros(h, w);
    let mut row = 0;
    for b in &bands {
        out.view_mut((row, 0), b.shape()).copy_from(b);
        row += b.nrows();
    }
    Ok(out)
}

/// Brenner's families, named by their position in the list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BrennerFamily {
    F1,
    F2,
    F3,
    F4a,
    F4b,
    F5a,
    F5b,
    F6a,
    F6b,
    F6c,
    F7a,
    F7b,
    F7c,
}

impl BrennerFamily {
    pub const ALL: [BrennerFamily; 13] = [
        Self::F1,
        Self::F2,
        Self::F3,
        Self::F4a,
        Self::F4b,
        Self::F5a,
        Self::F5b,
        Self::F6a,
        Self::F6b,
        Self::F6c,
        Self::F7a,
        Self::F7b,
        Self::F7c,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown Brenner family {s:?}")))
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::F1 => "1",
            Self::F2 => "2",
            Self::F3 => "3",
            Self::F4a => "4a",
            Self::F4b => "4b",
            Self::F5a => "5a",
            Self::F5b => "5b",
            Self::F6a => "6a",
            Self::F6b => "6b",
            Self::F6c => "6c",
            Self::F7a => "7a",
            Self::F7b => "7b",
            Self::F7c => "7c",
        }
    }

    /// Smallest admissible `r`, or `None` for families without a size parameter.
    pub fn min_r(self) -> Option<usize> {
        match self {
            Self::F2 | Self::F6c => Some(2),
            Self::F3 | Self::F4b | Self::F5b | Self::F7c => Some(1),
            _ => None,
        }
    }

    /// `(u, ρ)` at size `r` (ignored for fixed families).
    pub fn dims(self, r: usize) -> (usize, i64) {
        match self {
            Self::F1 => (2, 0),
            Self::F2 => (2 * r, 1),
            Self::F3 => (2 * r + 2, -1),
            Self::F4a => (3, 1),
            Self::F4b => (2 * r + 3, 1),
            Self::F5a => (3, -1),
            Self::F5b => (2 * r + 3, -1),
            Self::F6a => (3, 2),
            Self::F6b => (5, 2),
            Self::F6c => (2 * r + 3, 2),
            Self::F7a => (3, -2),
            Self::F7b => (5, -2),
            Self::F7c => (2 * r + 5, -2),
        }
    }
}

impl fmt::Display for BrennerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A concrete member of a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BrennerFamilyId {
    pub family: BrennerFamily,
    pub r: Option<usize>,
    #[serde(serialize_with = "serialize_lambda")]
    pub lambda: Option<C64>,
}

fn serialize_lambda<S: serde::Serializer>(v: &Option<C64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.map(|z| [z.re, z.im]).serialize(s)
}

impl BrennerFamilyId {
    pub fn one(lambda: C64) -> Self {
        Self {
            family: BrennerFamily::F1,
            r: None,
            lambda: Some(lambda),
        }
    }

    pub fn fixed(family: BrennerFamily) -> Self {
        Self {
            family,
            r: None,
            lambda: None,
        }
    }

    pub fn sized(family: BrennerFamily, r: usize) -> Self {
        Self {
            family,
            r: Some(r),
            lambda: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match (self.family, self.family.min_r()) {
            (BrennerFamily::F1, _) => {
                let lam = self
                    .lambda
                    .ok_or_else(|| Error::Parameter("family 1 needs a parameter lambda".into()))?;
                if !(lam.re.is_finite() && lam.im.is_finite()) || lam.norm() == 0.0 || (lam - c(1.0, 0.0)).norm() == 0.0
                {
                    return Err(Error::Parameter(format!("lambda must avoid 0 and 1, got {lam}")));
                }
            }
            (f, Some(min)) => match self.r {
                Some(r) if r >= min => {}
                Some(r) => return Err(Error::Parameter(format!("family {f} needs r >= {min}, got {r}"))),
                None => return Err(Error::Parameter(format!("family {f} needs r"))),
            },
            (_, None) => {}
        }
        Ok(())
    }

    /// `(u, ρ)` encoded in the family name.
    pub fn dims(&self) -> (usize, i64) {
        self.family.dims(self.r.unwrap_or(0))
    }

    pub fn name(&self) -> String {
        let (u, rho) = self.dims();
        match self.lambda {
            Some(l) => format!("B({u},{rho};{}{:+}i)", l.re, l.im),
            None => format!("B({u},{rho})"),
        }
    }
}

type Recipe = [&'static [&'static [&'static str]]; 4];

fn recipe(family: BrennerFamily) -> Option<Recipe> {
    use BrennerFamily::*;
    Some(match family {
        F1 => return None,
        F2 => [
            &[&["I", "O"]],
            &[&["O", "I"]],
            &[&["I", "I"]],
            &[&["I", "J"], &["eta", "d"]],
        ],
        F3 => [
            &[&["I", "O", "xi", "xi"], &["eta", "d", "0", "0"]],
            &[&["O", "J", "b", "xi"], &["eta", "eta", "0", "1"]],
            &[&["I", "J", "b", "xi"], &["eta", "d", "0", "1"]],
            &[&["I", "xi", "xi", "I"]],
        ],
        F4a => [
            &[&["1", "0", "0"], &["0", "1", "0"]],
            &[&["1", "0", "0"], &["0", "0", "1"]],
            &[&["0", "1", "0"], &["0", "0", "1"]],
            &[&["1", "1", "1"]],
        ],
        F4b => [
            &[
                &["I", "O", "xi", "xi", "xi"],
                &["eta", "eta", "1", "0", "0"],
                &["eta", "eta", "0", "1", "0"],
            ],
            &[
                &["O", "I", "xi", "xi", "xi"],
                &["eta", "eta", "1", "0", "0"],
                &["eta", "eta", "0", "0", "1"],
            ],
            &[
                &["I", "I", "xi", "xi", "xi"],
                &["eta", "eta", "0", "1", "0"],
                &["eta", "eta", "0", "0", "1"],
            ],
            &[&["I", "J", "b", "xi", "b"], &["eta", "d", "0", "1", "0"]],
        ],
        F5a => [
            &[&["0", "1", "0"]],
            &[&["0", "0", "1"]],
            &[&["1", "0", "0"]],
            &[&["0", "1", "1"], &["1", "0", "1"]],
        ],
        F5b => [
            &[&["I", "O", "xi", "xi", "xi"], &["eta", "eta", "0", "1", "0"]],
            &[&["O", "I", "xi", "xi", "xi"], &["eta", "eta", "0", "0", "1"]],
            &[&["I", "I", "xi", "xi", "xi"], &["eta", "eta", "1", "0", "0"]],
            &[
                &["I", "J", "b", "xi", "xi"],
                &["eta", "d", "0", "1", "0"],
                &["eta", "eta", "1", "0", "1"],
            ],
        ],
        F6a => [
            &[&["1", "0", "0"], &["0", "1", "0"]],
            &[&["1", "0", "0"], &["0", "0", "1"]],
            &[&["0", "1", "0"], &["0", "0", "1"]],
            &[&["1", "0", "1"], &["1", "1", "0"]],
        ],
        F6b => [
            &[
                &["1", "0", "0", "0", "0"],
                &["0", "0", "1", "0", "0"],
                &["0", "0", "0", "1", "0"],
            ],
            &[
                &["0", "1", "0", "0", "0"],
                &["0", "0", "1", "0", "0"],
                &["0", "0", "0", "0", "1"],
            ],
            &[
                &["1", "1", "0", "0", "0"],
                &["0", "0", "0", "1", "0"],
                &["0", "0", "0", "0", "1"],
            ],
            &[
                &["1", "0", "1", "0", "0"],
                &["0", "1", "0", "0", "0"],
                &["0", "0", "1", "1", "1"],
            ],
        ],
        F6c => [
            &[
                &["I", "O", "xi", "xi", "xi"],
                &["eta", "eta", "1", "0", "0"],
                &["eta", "eta", "0", "1", "0"],
            ],
            &[
                &["O", "I", "xi", "xi", "xi"],
                &["eta", "eta", "1", "0", "0"],
                &["eta", "eta", "0", "0", "1"],
            ],
            &[
                &["I", "I", "xi", "xi", "xi"],
                &["eta", "eta", "0", "1", "0"],
                &["eta", "eta", "0", "0", "1"],
            ],
            &[
                &["I", "J^2", "J b", "xi", "(J+I) b"],
                &["eta", "d", "0", "0", "0"],
                &["eta", "d J", "0", "1", "0"],
            ],
        ],
        F7a => [
            &[&["0", "1", "0"]],
            &[&["0", "0", "1"]],
            &[&["1", "0", "0"]],
            &[&["1", "1", "1"]],
        ],
        F7b => [
            &[&["1", "0", "0", "0", "0"], &["0", "0", "0", "1", "0"]],
            &[&["0", "1", "0", "0", "0"], &["0", "0", "0", "0", "1"]],
            &[&["1", "1", "0", "0", "0"], &["0", "0", "1", "0", "0"]],
            &[&["1", "0", "1", "1", "0"], &["0", "0", "0", "1", "1"]],
        ],
        // The second block row of K_2 reads (eta, eta, 0, 0, 0, 0, 1).
        F7c => [
            &[
                &["I", "O", "xi", "xi", "xi", "xi", "xi"],
                &["eta", "d", "0", "0", "0", "0", "0"],
                &["eta", "eta", "0", "0", "0", "1", "0"],
            ],
            &[
                &["O", "J", "b", "xi", "xi", "xi", "xi"],
                &["eta", "eta", "0", "1", "0", "0", "0"],
                &["eta", "eta", "0", "0", "0", "0", "1"],
            ],
            &[
                &["I", "J", "b", "xi", "xi", "xi", "xi"],
                &["eta", "d", "0", "1", "0", "0", "0"],
                &["eta", "eta", "0", "0", "1", "0", "0"],
            ],
            &[
                &["I", "J^3", "J^2 b", "J b", "b", "xi", "xi"],
                &["b^T", "d", "0", "0", "0", "0", "1"],
                &["eta", "d J^2", "0", "0", "0", "1", "0"],
            ],
        ],
    })
}

/// Below this size the block recipe of family 7c degenerates (`J^3 = 0`
/// kills the first row of `K_4`) and the quadruple is not transitive. Those
/// members are built as annihilators of `B(2r+5, 2)`.
const F7C_RECIPE_MIN_R: usize = 3;

/// Integer basis (as rows) of `{x : M x = 0}`, by exact elimination over ℚ.
pub fn integer_annihilator(m: &IntMatrix) -> IntMatrix {
    type Q = Ratio<i64>;
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<Q>> = (0..rows)
        .map(|i| (0..cols).map(|j| Q::from_integer(m[(i, j)])).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Q::one() / a[row][col];
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        let pivot_row = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col];
                for (x, &p) in r.iter_mut().zip(&pivot_row) {
                    *x -= p * f;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = IntMatrix::zeros(free.len(), cols);
    for (k, &f) in free.iter().enumerate() {
        let mut v = vec![Q::zero(); cols];
        v[f] = Q::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[i][f];
        }
        let lcm = v.iter().fold(1i64, |acc, x| num_integer_lcm(acc, *x.denom()));
        for j in 0..cols {
            out[(k, j)] = (v[j] * Q::from_integer(lcm)).to_integer();
        }
    }
    out
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    (a / gcd(a, b) * b).abs()
}

fn to_complex(m: &IntMatrix) -> ComplexMatrix {
    m.map(|v| c(v as f64, 0.0))
}

/// The four spanning matrices `𝒦_1..𝒦_4` (rows span `K_i`).
pub fn brenner_raw(id: &BrennerFamilyId) -> Result<[ComplexMatrix; 4]> {
    id.validate()?;
    if id.family == BrennerFamily::F1 {
        let lam = id.lambda.expect("validated");
        let row = |a: C64, b: C64| ComplexMatrix::from_row_slice(1, 2, &[a, b]);
        let (one, zero) = (c(1.0, 0.0), c(0.0, 0.0));
        return Ok([row(one, zero), row(zero, one), row(one, one), row(one, lam)]);
    }
    let r = id.r.unwrap_or(1);
    let ints: Vec<IntMatrix> = if id.family == BrennerFamily::F7c && r < F7C_RECIPE_MIN_R {
        let dual = BrennerFamilyId::sized(BrennerFamily::F6c, r + 1);
        integer_raw(&dual)?.iter().map(integer_annihilator).collect()
    } else {
        integer_raw(id)?
    };
    Ok([0, 1, 2, 3].map(|i| to_complex(&ints[i])))
}

fn integer_raw(id: &BrennerFamilyId) -> Result<Vec<IntMatrix>> {
    let rec = recipe(id.family).expect("integer family");
    let r = id.r.unwrap_or(1);
    rec.iter().map(|rows| assemble(rows, r)).collect()
}

/// Builds `B(u, ρ)` as a system of four row spans.
pub fn build_brenner(id: &BrennerFamilyId, tol: &TolerancePolicy) -> Result<SubspaceSystem> {
    let raw = brenner_raw(id)?;
    let (u, _) = id.dims();
    if let Some(m) = raw.iter().find(|m| m.ncols() != u) {
        return Err(Error::Dimension(format!(
            "{}: assembled width {} differs from u = {u}",
            id.name(),
            m.ncols()
        )));
    }
    SubspaceSystem::from_row_spans(u, &raw, tol)
}

#[derive(Debug, Clone, Serialize)]
pub struct BrennerReport {
    pub name: String,
    pub defect: i64,
    pub expected_defect: i64,
    pub defect_ok: bool,
    pub proper_ok: bool,
    pub distinct_ok: bool,
    pub end_dimension: usize,
    pub transitive: bool,
}

impl BrennerReport {
    pub fn passed(&self) -> bool {
        self.defect_ok && self.proper_ok && self.distinct_ok && self.transitive
    }
}

/// Checks defect, properness, distinctness and transitivity of `B(u, ρ)`.
pub fn verify_brenner(id: &BrennerFamilyId, tol: &TolerancePolicy) -> Result<BrennerReport> {
    let s = build_brenner(id, tol)?;
    let (u, rho) = id.dims();
    let d = defect(&s)?;
    let proper_ok = s.dims().iter().all(|&k| k > 0 && k < u);
    let subs = s.subspaces();
    let distinct_ok = (0..4).all(|i| ((i + 1)..4).all(|j| !subs[i].same_as(&subs[j], tol)));
    let end_dimension = endo::end_dimension(&s, tol);
    Ok(BrennerReport {
        name: id.name(),
        defect: d,
        expected_defect: rho,
        defect_ok: d == rho,
        proper_ok,
        distinct_ok,
        end_dimension,
        transitive: end_dimension == 1,
    })
}

/// Every family member with `u ≤ u_max`; family 1 once per supplied λ.
pub fn enumerate_brenner(u_max: usize, lambdas: &[C64]) -> Vec<BrennerFamilyId> {
    let mut out = Vec::new();
    for family in BrennerFamily::ALL {
        match family {
            BrennerFamily::F1 => {
                if u_max >= 2 {
                    out.extend(lambdas.iter().map(|&l| BrennerFamilyId::one(l)));
                }
            }
            f => match f.min_r() {
                None => {
                    if f.dims(0).0 <= u_max {
                        out.push(BrennerFamilyId::fixed(f));
                    }
                }
                Some(min) => {
                    let mut r = min;
                    while f.dims(r).0 <= u_max {
                        out.push(BrennerFamilyId::sized(f, r));
                        r += 1;
                    }
                }
            },
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn parses_and_evaluates_expressions() {
        let e = BlockExpr::parse("(J+I) b").unwrap();
        let m = e.eval(3).unwrap();
        assert_eq!(m.as_slice(), &[0, 1, 1]);
        assert_eq!(
            BlockExpr::parse("d J^2").unwrap().eval(3).unwrap().as_slice(),
            &[0, 0, 1]
        );
        assert_eq!(BlockExpr::parse("b^T").unwrap().eval(2).unwrap().shape(), (1, 2));
        assert_eq!(
            BlockExpr::parse("J^3").unwrap().eval(2).unwrap(),
            IntMatrix::zeros(2, 2)
        );
        assert!(BlockExpr::parse("J b J").unwrap().eval(2).is_err());
        assert!(BlockExpr::parse("K").is_err());
        assert!(BlockExpr::parse("(J").is_err());
    }

    #[test]
    fn family_one_lambda_two() {
        let s = build_brenner(&BrennerFamilyId::one(c(2.0, 0.0)), &tol()).unwrap();
        assert_eq!(s.ambient_dim(), 2);
        assert_eq!(s.dims(), vec![1, 1, 1, 1]);
        let expect = Subspace::line(&[c(1.0, 0.0), c(2.0, 0.0)], &tol());
        assert!(s.subspace(3).same_as(&expect, &tol()));
    }

    use crate::subspace::Subspace;

    #[test]
    fn family_one_rejects_degenerate_lambda() {
        for bad in [c(0.0, 0.0), c(1.0, 0.0)] {
            assert!(matches!(
                build_brenner(&BrennerFamilyId::one(bad), &tol()),
                Err(Error::Parameter(_))
            ));
        }
        assert!(build_brenner(&BrennerFamilyId::sized(BrennerFamily::F2, 1), &tol()).is_err());
        assert!(build_brenner(&BrennerFamilyId::sized(BrennerFamily::F6c, 1), &tol()).is_err());
    }

    #[test]
    fn family_7a_lines() {
        let s = build_brenner(&BrennerFamilyId::fixed(BrennerFamily::F7a), &tol()).unwrap();
        assert_eq!(s.dims(), vec![1, 1, 1, 1]);
        assert_eq!(defect(&s).unwrap(), -2);
        let all_ones = Subspace::line(&[c(1.0, 0.0); 3], &tol());
        assert!(s.subspace(3).same_as(&all_ones, &tol()));
    }

    #[test]
    fn family_2_dims() {
        let s = build_brenner(&BrennerFamilyId::sized(BrennerFamily::F2, 2), &tol()).unwrap();
        assert_eq!(s.dims(), vec![2, 2, 2, 3]);
    }

    #[test]
    fn verify_examples() {
        let rep = verify_brenner(&BrennerFamilyId::one(c(2.0, 0.0)), &tol()).unwrap();
        assert!(rep.passed());
        let rep = verify_brenner(&BrennerFamilyId::sized(BrennerFamily::F3, 1), &tol()).unwrap();
        assert_eq!(rep.defect, -1);
        assert!(rep.passed());
        let rep = verify_brenner(&BrennerFamilyId::fixed(BrennerFamily::F6b), &tol()).unwrap();
        assert_eq!(rep.defect, 2);
        assert!(rep.passed());
    }

    #[test]
    fn small_7c_members_via_annihilator() {
        for r in 1..=4 {
            let rep = verify_brenner(&BrennerFamilyId::sized(BrennerFamily::F7c, r), &tol()).unwrap();
            assert!(rep.passed(), "{rep:?}");
            let raw = brenner_raw(&BrennerFamilyId::sized(BrennerFamily::F7c, r)).unwrap();
            assert!(raw.iter().all(|m| m.ncols() == 2 * r + 5));
        }
    }

    #[test]
    fn annihilator_is_exact() {
        let m = IntMatrix::from_row_slice(2, 4, &[1, 2, 0, 3, 0, 1, 1, 1]);
        let ann = integer_annihilator(&m);
        assert_eq!(ann.nrows(), 2);
        assert_eq!(&m * ann.transpose(), IntMatrix::zeros(2, 2));
    }

    #[test]
    fn enumeration_covers_every_family() {
        let ids = enumerate_brenner(9, &[c(2.0, 0.0)]);
        let mut plus1: Vec<usize> = vec![];
        let mut minus1 = vec![];
        let mut two = vec![];
        let mut minus2 = vec![];
        for id in &ids {
            let (u, rho) = id.dims();
            assert!(u <= 9);
            match rho {
                1 => plus1.push(u),
                -1 => minus1.push(u),
                2 => two.push(u),
                -2 => minus2.push(u),
                _ => {}
            }
        }
        for v in [&mut plus1, &mut minus1, &mut two, &mut minus2] {
            v.sort();
        }
        assert_eq!(plus1, (3..=9).collect::<Vec<_>>());
        assert_eq!(minus1, (3..=9).collect::<Vec<_>>());
        assert_eq!(two, vec![3, 5, 7, 9]);
        assert_eq!(minus2, vec![3, 5, 7, 9]);
    }
}
