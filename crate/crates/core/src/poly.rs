//! Polynomials in the eighteen fundamental matrix-element symbols.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diffops::ScalarField;
use crate::euler::{closed_entries, EulerAngles, FundamentalRep};

/// Exact weight coordinates (2·t3, 3·y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Weight {
    pub t3x2: i32,
    pub yx3: i32,
}

impl Weight {
    pub const fn new(t3x2: i32, yx3: i32) -> Self {
        Self { t3x2, yx3 }
    }

    pub fn t3(self) -> f64 {
        f64::from(self.t3x2) / 2.0
    }

    pub fn y(self) -> f64 {
        f64::from(self.yx3) / 3.0
    }

    pub fn shifted(self, (dt, dy): (i32, i32)) -> Self {
        Self::new(self.t3x2 + dt, self.yx3 + dy)
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.t3x2 + o.t3x2, self.yx3 + o.yx3)
    }
}

/// Formats n/d in lowest terms, e.g. "-1/2", "2/3", "0".
pub fn fraction(n: i32, d: i32) -> String {
    fn gcd(a: i32, b: i32) -> i32 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(n, d).max(1);
    let (n, d) = (n / g, d / g);
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// One matrix element of a fundamental representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FundamentalSymbol {
    pub rep: FundamentalRep,
    pub row: u8,
    pub col: u8,
}

impl FundamentalSymbol {
    pub const COUNT: usize = 18;

    pub fn new(rep: FundamentalRep, row: u8, col: u8) -> Self {
        assert!(row < 3 && col < 3, "symbol indices must be below 3");
        Self { rep, row, col }
    }

    /// Dense index rep·9 + row·3 + col.
    pub fn index(self) -> u8 {
        let r = match self.rep {
            FundamentalRep::Three => 0,
            FundamentalRep::ThreeStar => 1,
        };
        r * 9 + self.row * 3 + self.col
    }

    pub fn from_index(i: u8) -> Self {
        let rep = if i < 9 { FundamentalRep::Three } else { FundamentalRep::ThreeStar };
        let k = i % 9;
        Self::new(rep, k / 3, k % 3)
    }

    pub fn all() -> impl Iterator<Item = FundamentalSymbol> {
        (0..Self::COUNT as u8).map(Self::from_index)
    }

    pub fn row_weight(self) -> Weight {
        let (t, y) = self.rep.weights()[self.row as usize];
        Weight::new(t, y)
    }

    pub fn col_weight(self) -> Weight {
        let (t, y) = self.rep.weights()[self.col as usize];
        Weight::new(t, y)
    }
}

impl fmt::Display for FundamentalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.row_weight();
        let c = self.col_weight();
        write!(
            f,
            "<{},{}||{},{}>_{}",
            fraction(r.t3x2, 2),
            fraction(r.yx3, 3),
            fraction(c.t3x2, 2),
            fraction(c.yx3, 3),
            self.rep.name()
        )
    }
}

/// Sorted list of symbol indices; repeated entries are powers.
pub type Monomial = Vec<u8>;

/// A linear combination of monomials in the fundamental symbols.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyState {
    terms: BTreeMap<Monomial, Complex64>,
}

impl PolyState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        let mut s = Self::zero();
        s.add_term(Vec::new(), c);
        s
    }

    pub fn symbol(sym: FundamentalSymbol) -> Self {
        let mut s = Self::zero();
        s.add_term(vec![sym.index()], Complex64::new(1.0, 0.0));
        s
    }

    /// Product of the given symbols with coefficient 1.
    pub fn monomial(symbols: &[FundamentalSymbol]) -> Self {
        let mut m: Monomial = symbols.iter().map(|s| s.index()).collect();
        m.sort_unstable();
        let mut s = Self::zero();
        s.add_term(m, Complex64::new(1.0, 0.0));
        s
    }

    /// Adds `c` to the coefficient of `m` (which must be sorted); drops exact zeros.
    pub fn add_term(&mut self, m: Monomial, c: Complex64) {
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]));
        let zero = Complex64::new(0.0, 0.0);
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if c != zero {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == zero {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u8]) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient modulus.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// True when every coefficient is at most `tol` in modulus.
    pub fn is_negligible(&self, tol: f64) -> bool {
        self.max_coeff() <= tol
    }

    /// Copy without coefficients of modulus at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self { terms: self.terms.iter().filter(|(_, c)| c.norm() > tol).map(|(m, c)| (m.clone(), *c)).collect() }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero();
        if s != Complex64::new(0.0, 0.0) {
            out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// out += s·other
    pub fn axpy(&mut self, s: Complex64, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), s * c);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = Vec::with_capacity(m1.len() + m2.len());
                m.extend_from_slice(m1);
                m.extend_from_slice(m2);
                m.sort_unstable();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Complex64::new(1.0, 0.0)), |acc, _| acc.mul(self))
    }

    /// Largest coefficient difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_coeff()
    }

    /// Evaluates the polynomial at a group element.
    pub fn eval(&self, at: &EulerAngles) -> Complex64 {
        let e3 = closed_entries(at, FundamentalRep::Three);
        let es = closed_entries(at, FundamentalRep::ThreeStar);
        let value = |i: u8| {
            let s = FundamentalSymbol::from_index(i);
            let e = if s.rep == FundamentalRep::Three { &e3 } else { &es };
            e[s.row as usize][s.col as usize]
        };
        self.terms
            .iter()
            .map(|(m, c)| m.iter().fold(*c, |acc, &i| acc * value(i)))
            .sum()
    }

    /// Function view of the polynomial.
    pub fn field(&self, descriptor: impl Into<String>) -> ScalarField {
        let me = self.clone();
        ScalarField::from_fn(descriptor, move |x| me.eval(x))
    }

    fn weight_by(&self, f: impl Fn(FundamentalSymbol) -> Weight) -> Option<Weight> {
        let mut out: Option<Weight> = None;
        for m in self.terms.keys() {
            let w = m.iter().fold(Weight::default(), |acc, &i| acc + f(FundamentalSymbol::from_index(i)));
            match out {
                None => out = Some(w),
                Some(prev) if prev != w => return None,
                _ => {}
            }
        }
        out
    }

    /// Common row weight of all monomials, or None if empty or mixed.
    pub fn row_weight(&self) -> Option<Weight> {
        self.weight_by(FundamentalSymbol::row_weight)
    }

    /// Common column weight of all monomials, or None if empty or mixed.
    pub fn col_weight(&self) -> Option<Weight> {
        self.weight_by(FundamentalSymbol::col_weight)
    }

    /// Degrees (in Three symbols, in ThreeStar symbols) if uniform across terms.
    pub fn degrees(&self) -> Option<(usize, usize)> {
        let mut out = None;
        for m in self.terms.keys() {
            let n3 = m.iter().filter(|&&i| i < 9).count();
            let d = (n3, m.len() - n3);
            match out {
                None => out = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        out
    }
}

impl fmt::Display for PolyState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            for &i in m {
                write!(f, "{}", FundamentalSymbol::from_index(i))?;
            }
        }
        Ok(())
    }
}
