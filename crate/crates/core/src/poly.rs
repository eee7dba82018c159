//! Sparse multivariate polynomials over Q(zeta_12) in the fixed
//! alphabet {a, b, X, Y, x}, plus the small matrix algebra needed for
//! determinants, characteristic polynomials, and exact division.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclo::Cyc12;
use crate::Error;

pub const NVARS: usize = 5;

/// Variable alphabet. `Lam` is the characteristic-polynomial
/// indeterminate, printed as `x`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    A = 0,
    B = 1,
    X = 2,
    Y = 3,
    Lam = 4,
}

pub const VAR_NAMES: [&str; NVARS] = ["a", "b", "X", "Y", "x"];

pub type Exp = [u16; NVARS];

/// Sparse polynomial: exponent vector -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Exp, Cyc12>,
}

fn grlex_le(a: &Exp, b: &Exp) -> bool {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    (da, a) <= (db, b)
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Cyc12) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert([0; NVARS], c);
        }
        p
    }

    pub fn one() -> Self {
        MPoly::constant(Cyc12::one())
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(Cyc12::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0u16; NVARS];
        e[v as usize] = 1;
        let mut p = MPoly::zero();
        p.terms.insert(e, Cyc12::one());
        p
    }

    pub fn monomial(e: Exp, c: Cyc12) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Cyc12)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, e: Exp, c: Cyc12) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Leading term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exp, &Cyc12)> {
        self.terms
            .iter()
            .max_by(|(ea, _), (eb, _)| {
                if ea == eb {
                    std::cmp::Ordering::Equal
                } else if grlex_le(ea, eb) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|e| e[v as usize]).max().unwrap_or(0)
    }

    /// Coefficient polynomial of `v^k` (the result no longer mentions `v`).
    pub fn coefficient_of(&self, v: Var, k: u16) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if e[v as usize] == k {
                let mut e2 = *e;
                e2[v as usize] = 0;
                out.insert(e2, c.clone());
            }
        }
        out
    }

    /// Substitute polynomials for variables; unbound variables are kept.
    pub fn subst(&self, bindings: &[(Var, MPoly)]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            let mut residual = [0u16; NVARS];
            for v in 0..NVARS {
                if e[v] == 0 {
                    continue;
                }
                if let Some((_, p)) = bindings.iter().find(|(bv, _)| *bv as usize == v) {
                    term = &term * &p.pow(e[v] as u32);
                } else {
                    residual[v] = e[v];
                }
            }
            out = &out + &(&term * &MPoly::monomial(residual, Cyc12::one()));
        }
        out
    }

    /// Substitute scalars for every variable and require a scalar result.
    pub fn eval(&self, bindings: &[(Var, Cyc12)]) -> Result<Cyc12, Error> {
        let binds: Vec<(Var, MPoly)> = bindings
            .iter()
            .map(|(v, c)| (*v, MPoly::constant(c.clone())))
            .collect();
        let r = self.subst(&binds);
        match r.as_constant() {
            Some(c) => Ok(c),
            None => Err(Error::UnboundVariable(
                r.terms
                    .keys()
                    .next()
                    .map(|e| {
                        (0..NVARS)
                            .filter(|&v| e[v] > 0)
                            .map(|v| VAR_NAMES[v])
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .unwrap_or_default(),
            )),
        }
    }

    pub fn as_constant(&self) -> Option<Cyc12> {
        if self.terms.is_empty() {
            return Some(Cyc12::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&[0; NVARS]) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Exact division test: returns `Some(q)` with `self = d * q`, or
    /// `None` when `self` is not divisible by `d`.
    pub fn divide_exact(&self, d: &MPoly) -> Result<Option<MPoly>, Error> {
        let (dlt_e, dlt_c) = match d.leading_term() {
            Some(lt) => (*lt.0, lt.1.clone()),
            None => return Err(Error::ZeroDivisor),
        };
        let dlt_inv = dlt_c.inv()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((re, rc)) = rem.leading_term().map(|(e, c)| (*e, c.clone())) {
            let mut qe = [0u16; NVARS];
            let mut divisible = true;
            for v in 0..NVARS {
                if re[v] < dlt_e[v] {
                    divisible = false;
                    break;
                }
                qe[v] = re[v] - dlt_e[v];
            }
            if !divisible {
                return Ok(None);
            }
            let qc = &rc * &dlt_inv;
            let qterm = MPoly::monomial(qe, qc);
            rem = &rem - &(d * &qterm);
            quot = &quot + &qterm;
        }
        Ok(Some(quot))
    }

    /// Parse a polynomial expression over the fixed alphabet.
    /// Same grammar as scalar literals, extended with variable factors.
    pub fn parse(text: &str) -> Result<MPoly, Error> {
        let bytes: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut p = PolyParser { buf: &bytes, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.buf.len() {
            return Err(Error::Syntax(format!(
                "unexpected input at byte {} of polynomial",
                p.pos
            )));
        }
        Ok(v)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, -c);
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            out.terms.insert(*e, -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = [0u16; NVARS];
                for v in 0..NVARS {
                    e[v] = ea[v] + eb[v];
                }
                out.insert(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest grlex term first for readability.
        let mut keys: Vec<&Exp> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            if grlex_le(a, b) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Less
            }
        });
        let mut first = true;
        for e in keys {
            let c = &self.terms[e];
            let cs = c.to_string();
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = (0..NVARS)
                .filter(|&v| e[v] > 0)
                .map(|v| {
                    if e[v] == 1 {
                        VAR_NAMES[v].to_string()
                    } else {
                        format!("{}^{}", VAR_NAMES[v], e[v])
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "({cs})")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({cs})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

struct PolyParser<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn peek(&self) -> Option<u8> {
        self.buf.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly, Error> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            while matches!(self.peek(), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(Error::Syntax("expected exponent".into()));
            }
            let e: u32 = std::str::from_utf8(&self.buf[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::Syntax("exponent too large".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, Error> {
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                Ok(MPoly::var(Var::A))
            }
            Some(b'b') => {
                self.pos += 1;
                Ok(MPoly::var(Var::B))
            }
            Some(b'X') => {
                self.pos += 1;
                Ok(MPoly::var(Var::X))
            }
            Some(b'Y') => {
                self.pos += 1;
                Ok(MPoly::var(Var::Y))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(MPoly::var(Var::Lam))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(MPoly::constant(Cyc12::i()))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Syntax("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                let v = self.factor()?;
                Ok(-&v)
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while matches!(self.peek(), Some(b'0'..=b'9')) {
                    self.pos += 1;
                }
                let n: i64 = std::str::from_utf8(&self.buf[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| Error::Syntax("integer too large".into()))?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let dstart = self.pos;
                    while matches!(self.peek(), Some(b'0'..=b'9')) {
                        self.pos += 1;
                    }
                    let d: i64 = std::str::from_utf8(&self.buf[dstart..self.pos])
                        .unwrap()
                        .parse()
                        .map_err(|_| Error::Syntax("integer too large".into()))?;
                    if d == 0 {
                        return Err(Error::ZeroDenominator);
                    }
                    return Ok(MPoly::constant(Cyc12::from_rat(crate::cyclo::rat(n, d))));
                }
                Ok(MPoly::int(n))
            }
            _ => Err(Error::Syntax(format!(
                "expected atom at byte {} of polynomial",
                self.pos
            ))),
        }
    }
}

/// Rectangular matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MPoly>) -> Self {
        assert!(rows >= 1 && cols >= 1);
        assert_eq!(entries.len(), rows * cols);
        PolyMatrix { rows, cols, entries }
    }

    pub fn from_strs(rows: usize, cols: usize, entries: &[&str]) -> Result<Self, Error> {
        let parsed: Result<Vec<MPoly>, Error> = entries.iter().map(|s| MPoly::parse(s)).collect();
        Ok(PolyMatrix::new(rows, cols, parsed?))
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![MPoly::zero(); n * n];
        for k in 0..n {
            entries[k * n + k] = MPoly::one();
        }
        PolyMatrix::new(n, n, entries)
    }

    pub fn at(&self, r: usize, c: usize) -> &MPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn matmul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = MPoly::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.at(r, k) * rhs.at(k, c));
                }
                entries.push(acc);
            }
        }
        PolyMatrix::new(self.rows, rhs.cols, entries)
    }

    pub fn scale(&self, s: &MPoly) -> PolyMatrix {
        PolyMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e * s).collect(),
        )
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn trace(&self) -> Result<MPoly, Error> {
        if self.rows != self.cols {
            return Err(Error::NonSquare);
        }
        let mut acc = MPoly::zero();
        for k in 0..self.rows {
            acc = &acc + self.at(k, k);
        }
        Ok(acc)
    }

    /// Determinant by cofactor expansion; intended for dimensions <= 6.
    pub fn det(&self) -> Result<MPoly, Error> {
        if self.rows != self.cols {
            return Err(Error::NonSquare);
        }
        assert!(self.rows <= 6, "cofactor expansion is limited to 6x6");
        Ok(det_rec(&self.entries, self.rows))
    }

    /// Coefficients of the monic characteristic polynomial det(xI - M),
    /// listed from the x^(n-1) coefficient down to the constant.
    /// For 2x2 this is (-trace, det); for 3x3 it is (B, C, D).
    pub fn charpoly(&self) -> Result<Vec<MPoly>, Error> {
        if self.rows != self.cols {
            return Err(Error::NonSquare);
        }
        assert!(
            self.rows == 2 || self.rows == 3,
            "characteristic polynomial supported for 2x2 and 3x3"
        );
        let n = self.rows;
        let xi = PolyMatrix::identity(n).scale(&MPoly::var(Var::Lam));
        let cp = xi.sub(self).det()?;
        debug_assert!(cp.coefficient_of(Var::Lam, n as u16) == MPoly::one());
        Ok((0..n)
            .map(|k| cp.coefficient_of(Var::Lam, (n - 1 - k) as u16))
            .collect())
    }

    /// Evaluate every entry at scalar bindings.
    pub fn eval(&self, bindings: &[(Var, Cyc12)]) -> Result<CMat, Error> {
        let entries: Result<Vec<Cyc12>, Error> =
            self.entries.iter().map(|p| p.eval(bindings)).collect();
        Ok(CMat {
            rows: self.rows,
            cols: self.cols,
            entries: entries?,
        })
    }
}

fn det_rec(entries: &[MPoly], n: usize) -> MPoly {
    if n == 1 {
        return entries[0].clone();
    }
    let mut acc = MPoly::zero();
    for c in 0..n {
        let top = &entries[c];
        if top.is_zero() {
            continue;
        }
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for r in 1..n {
            for cc in 0..n {
                if cc != c {
                    minor.push(entries[r * n + cc].clone());
                }
            }
        }
        let cof = &det_rec(&minor, n - 1) * top;
        acc = if c % 2 == 0 { &acc + &cof } else { &acc - &cof };
    }
    acc
}

/// Rectangular matrix of field scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Cyc12>,
}

impl CMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Cyc12>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        CMat { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Cyc12::zero(); n * n];
        for k in 0..n {
            entries[k * n + k] = Cyc12::one();
        }
        CMat::new(n, n, entries)
    }

    pub fn at(&self, r: usize, c: usize) -> &Cyc12 {
        &self.entries[r * self.cols + c]
    }

    pub fn column(v: &[Cyc12]) -> Self {
        CMat::new(v.len(), 1, v.to_vec())
    }

    pub fn matmul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows);
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Cyc12::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.at(r, k) * rhs.at(k, c));
                }
                entries.push(acc);
            }
        }
        CMat::new(self.rows, rhs.cols, entries)
    }

    pub fn apply(&self, v: &[Cyc12]) -> Vec<Cyc12> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Cyc12::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.at(r, k) * &v[k]);
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Cyc12 {
        assert_eq!(self.rows, self.cols);
        let mut acc = Cyc12::zero();
        for k in 0..self.rows {
            acc = &acc + self.at(k, k);
        }
        acc
    }

    pub fn det(&self) -> Cyc12 {
        assert_eq!(self.rows, self.cols);
        match self.rows {
            1 => self.at(0, 0).clone(),
            2 => &(self.at(0, 0) * self.at(1, 1)) - &(self.at(0, 1) * self.at(1, 0)),
            3 => {
                let mut acc = Cyc12::zero();
                for c in 0..3 {
                    let m = &(self.at(1, (c + 1) % 3) * self.at(2, (c + 2) % 3))
                        - &(self.at(1, (c + 2) % 3) * self.at(2, (c + 1) % 3));
                    acc = &acc + &(self.at(0, c) * &m);
                }
                acc
            }
            n => {
                let entries: Vec<MPoly> = self
                    .entries
                    .iter()
                    .map(|c| MPoly::constant(c.clone()))
                    .collect();
                assert!(n <= 6);
                det_rec(&entries, n).as_constant().unwrap()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        MPoly::parse(s).unwrap()
    }

    #[test]
    fn ring_basics() {
        assert_eq!(&p("X-1") * &p("X+1"), p("X^2-1"));
        let q = p("a^2+3*b");
        assert_eq!(&q + &MPoly::zero(), q);
        assert_eq!(&p("a+b") * &p("a^2-a*b+b^2"), p("a^3+b^3"));
    }

    #[test]
    fn subst_cases() {
        let s = p("-(X+Y+1)").subst(&[(Var::X, p("a*b")), (Var::Y, p("a^3+b^3"))]);
        assert_eq!(s, p("-a*b-a^3-b^3-1"));
        let v = p("X^2+X+Y")
            .eval(&[(Var::X, Cyc12::from_int(0)), (Var::Y, Cyc12::from_int(1))])
            .unwrap();
        assert_eq!(v, Cyc12::from_int(1));
        assert!(p("X+Y").eval(&[(Var::X, Cyc12::one())]).is_err());
    }

    #[test]
    fn determinant_and_charpoly() {
        assert_eq!(PolyMatrix::identity(3).det().unwrap(), MPoly::one());
        let id2 = PolyMatrix::identity(2);
        let cp = id2.charpoly().unwrap();
        // x^2 - 2x + 1
        assert_eq!(cp, vec![p("-2"), p("1")]);
        let id3 = PolyMatrix::identity(3);
        assert_eq!(id3.charpoly().unwrap(), vec![p("-3"), p("3"), p("-1")]);
    }

    #[test]
    fn division_cases() {
        let q = p("X^2-1").divide_exact(&p("X-1")).unwrap().unwrap();
        assert_eq!(q, p("X+1"));
        assert!(p("X+1").divide_exact(&p("X")).unwrap().is_none());
        assert!(p("X").divide_exact(&MPoly::zero()).is_err());
    }

    #[test]
    fn det_multiplicative() {
        let a = PolyMatrix::from_strs(3, 3, &["a", "1", "0", "b", "X", "2", "0", "1", "Y"]).unwrap();
        let b = PolyMatrix::from_strs(3, 3, &["1", "a", "b", "0", "2", "X", "Y", "0", "1"]).unwrap();
        let lhs = a.matmul(&b).det().unwrap();
        let rhs = &a.det().unwrap() * &b.det().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cayley_hamilton_3x3() {
        let m = PolyMatrix::from_strs(3, 3, &["a", "b", "1", "0", "a+b", "2", "b", "1", "a"]).unwrap();
        let cp = m.charpoly().unwrap();
        let m2 = m.matmul(&m);
        let m3 = m2.matmul(&m);
        let z = m3
            .add(&m2.scale(&cp[0]))
            .add(&m.scale(&cp[1]))
            .add(&PolyMatrix::identity(3).scale(&cp[2]));
        for r in 0..3 {
            for c in 0..3 {
                assert!(z.at(r, c).is_zero());
            }
        }
    }
}
