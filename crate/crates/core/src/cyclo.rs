//! Exact arithmetic in the cyclotomic field Q(zeta_12).
//!
//! Elements are stored as `c0 + c1*z + c2*z^2 + c3*z^3` with rational
//! coefficients, reduced modulo the 12th cyclotomic polynomial
//! `z^4 - z^2 + 1`. The field contains `i = z^3`, the primitive cube
//! roots of unity `z^4, z^8`, and every 12th root of unity.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::Error;

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// An element of Q(zeta_12) in reduced basis form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyc12 {
    c: [Rat; 4],
}

impl Cyc12 {
    pub fn new(c0: Rat, c1: Rat, c2: Rat, c3: Rat) -> Self {
        Cyc12 { c: [c0, c1, c2, c3] }
    }

    pub fn zero() -> Self {
        Cyc12::default()
    }

    pub fn one() -> Self {
        Cyc12::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        Cyc12 { c: [r, Rat::zero(), Rat::zero(), Rat::zero()] }
    }

    pub fn from_int(n: i64) -> Self {
        Cyc12::from_rat(rat_int(n))
    }

    /// The imaginary unit, encoded as `z^3`.
    pub fn i() -> Self {
        Cyc12::zeta_pow(3)
    }

    /// `zeta^e` for any exponent, reduced into the basis.
    pub fn zeta_pow(e: u64) -> Self {
        let pat: [i64; 4] = match e % 12 {
            0 => [1, 0, 0, 0],
            1 => [0, 1, 0, 0],
            2 => [0, 0, 1, 0],
            3 => [0, 0, 0, 1],
            4 => [-1, 0, 1, 0],
            5 => [0, -1, 0, 1],
            6 => [-1, 0, 0, 0],
            7 => [0, -1, 0, 0],
            8 => [0, 0, -1, 0],
            9 => [0, 0, 0, -1],
            10 => [1, 0, -1, 0],
            11 => [0, 1, 0, -1],
            _ => unreachable!(),
        };
        Cyc12 {
            c: [rat_int(pat[0]), rat_int(pat[1]), rat_int(pat[2]), rat_int(pat[3])],
        }
    }

    pub fn coeffs(&self) -> &[Rat; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// Returns the rational value when the element lies in Q.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Field automorphism `zeta -> zeta^k` for `k` coprime to 12.
    fn galois(&self, k: u64) -> Self {
        debug_assert!(matches!(k, 1 | 5 | 7 | 11));
        let mut out = Cyc12::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if !cj.is_zero() {
                out = &out + &(Cyc12::zeta_pow(j as u64 * k) * Cyc12::from_rat(cj.clone()));
            }
        }
        out
    }

    /// Complex conjugation, `zeta -> zeta^11`.
    pub fn conj(&self) -> Self {
        self.galois(11)
    }

    /// `|z|^2 = z * conj(z)`, an exact element fixed by conjugation.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn is_root_of_unity_12(&self) -> bool {
        self.pow(12).is_one()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyc12::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Multiply the three nontrivial Galois conjugates; the full product
        // with self is the rational field norm.
        let prod = &(&self.galois(5) * &self.galois(7)) * &self.galois(11);
        let norm = self * &prod;
        let n = norm
            .as_rat()
            .expect("product of all Galois conjugates is rational")
            .clone();
        debug_assert!(!n.is_zero());
        Ok(&prod * &Cyc12::from_rat(n.recip()))
    }
}

impl Add for &Cyc12 {
    type Output = Cyc12;
    fn add(self, rhs: &Cyc12) -> Cyc12 {
        Cyc12 {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }
}

impl Sub for &Cyc12 {
    type Output = Cyc12;
    fn sub(self, rhs: &Cyc12) -> Cyc12 {
        Cyc12 {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }
}

impl Neg for &Cyc12 {
    type Output = Cyc12;
    fn neg(self) -> Cyc12 {
        Cyc12 {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

impl Mul for &Cyc12 {
    type Output = Cyc12;
    fn mul(self, rhs: &Cyc12) -> Cyc12 {
        let mut v = [
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
        ];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        // Reduce z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1.
        Cyc12 {
            c: [
                &(&v[0] - &v[4]) - &v[6],
                &v[1] - &v[5],
                &v[2] + &v[4],
                &v[3] + &v[5],
            ],
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Cyc12 {
            type Output = Cyc12;
            fn $method(self, rhs: Cyc12) -> Cyc12 {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Cyc12 {
    type Output = Cyc12;
    fn neg(self) -> Cyc12 {
        -&self
    }
}

impl Div for &Cyc12 {
    type Output = Result<Cyc12, Error>;
    fn div(self, rhs: &Cyc12) -> Result<Cyc12, Error> {
        Ok(self * &rhs.inv()?)
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyc12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if k == 0 {
                out.push_str(&fmt_rat(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&fmt_rat(&mag));
                    out.push('*');
                }
                if k == 1 {
                    out.push('z');
                } else {
                    out.push_str(&format!("z^{k}"));
                }
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Cyc12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc12({self})")
    }
}

/// Parse a scalar literal.
///
/// Grammar (whitespace ignored):
/// `expr := term (('+'|'-') term)*`
/// `term := factor ('*' factor)*`
/// `factor := rational | 'i' | 'z' ('^' uint)? | '(' expr ')'`
/// `rational := '-'? uint ('/' uint)?`
pub fn cyc_parse(text: &str) -> Result<Cyc12, Error> {
    let bytes: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut p = Parser { buf: &bytes, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.buf.len() {
        return Err(Error::Syntax(format!(
            "unexpected input at byte {} of scalar literal",
            p.pos
        )));
    }
    Ok(v)
}

struct Parser<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.buf.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Cyc12, Error> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Cyc12, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Cyc12, Error> {
        match self.peek() {
            Some(b'i') => {
                self.pos += 1;
                Ok(Cyc12::i())
            }
            Some(b'z') => {
                self.pos += 1;
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.uint()?
                } else {
                    1
                };
                Ok(Cyc12::zeta_pow(e))
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
            Some(b'-') | Some(b'0'..=b'9') => self.rational(),
            _ => Err(Error::Syntax(format!(
                "expected factor at byte {} of scalar literal",
                self.pos
            ))),
        }
    }

    fn rational(&mut self) -> Result<Cyc12, Error> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let n = self.uint_big()?;
        let d = if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.uint_big()?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            d
        } else {
            BigInt::one()
        };
        let mut r = Rat::new(n, d);
        if neg {
            r = -r;
        }
        Ok(Cyc12::from_rat(r))
    }

    fn uint(&mut self) -> Result<u64, Error> {
        let big = self.uint_big()?;
        Ok((&big % BigInt::from(12u8))
            .try_into()
            .expect("residue fits in u64"))
    }

    fn uint_big(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Syntax(format!(
                "expected digits at byte {} of scalar literal",
                start
            )));
        }
        let s = std::str::from_utf8(&self.buf[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }
}
