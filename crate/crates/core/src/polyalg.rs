//! Sparse multivariate polynomials over Q in the variables z0..z6.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{int_mod, rational_mod};

pub const NVARS: usize = 7;

pub type Exponents = [u8; NVARS];

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        let mut p = MultiPoly::zero();
        p.add_term(e, BigRational::one());
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = MultiPoly::zero();
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(*e, v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(MultiPoly::one(), |acc, _| &acc * self)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Replace z_i by a rational constant.
    pub fn substitute(&self, i: usize, value: &BigRational) -> Self {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut f = e.to_owned();
            let k = f[i];
            f[i] = 0;
            let factor = num_traits::pow(value.clone(), k as usize);
            out.add_term(f, c * factor);
        }
        out
    }

    pub fn eval_rational(&self, point: &[BigRational; NVARS]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Value mod p, with every coordinate and coefficient reduced first.
    pub fn eval_mod(&self, point: &[BigRational; NVARS], p: u64) -> Result<u64> {
        let mut xs = [0u64; NVARS];
        for (slot, x) in xs.iter_mut().zip(point) {
            *slot = rational_mod(x.numer(), x.denom(), p)?;
        }
        self.eval_mod_residues(&xs, p)
    }

    pub fn eval_mod_residues(&self, xs: &[u64; NVARS], p: u64) -> Result<u64> {
        let pm = p as u128;
        let mut total = 0u128;
        for (e, c) in &self.terms {
            let mut t = rational_mod(c.numer(), c.denom(), p)? as u128;
            for (&x, &k) in xs.iter().zip(e) {
                for _ in 0..k {
                    t = t * x as u128 % pm;
                }
            }
            total = (total + t) % pm;
        }
        Ok(total as u64)
    }

    /// The primitive integer multiple: denominators cleared, content removed,
    /// leading coefficient positive.
    pub fn primitive_integer(&self) -> Vec<(Exponents, BigInt)> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<(Exponents, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, (c * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        let sign = if ints.last().unwrap().1.is_negative() { -1 } else { 1 };
        for (_, c) in ints.iter_mut() {
            *c = &*c / &g * sign;
        }
        ints
    }

    /// Primitive integer form evaluated at residues; valid for every p.
    pub fn eval_primitive_mod(&self, xs: &[u64; NVARS], p: u64) -> u64 {
        let pm = p as u128;
        let mut total = 0u128;
        for (e, c) in self.primitive_integer() {
            let mut t = int_mod(&c, p) as u128;
            for (&x, &k) in xs.iter().zip(&e) {
                for _ in 0..k {
                    t = t * x as u128 % pm;
                }
            }
            total = (total + t) % pm;
        }
        total as u64
    }

    /// `self = c · other` for some nonzero rational c.
    pub fn proportional_to(&self, other: &MultiPoly) -> Option<BigRational> {
        let (e, c) = other.terms.iter().next()?;
        let mine = self.terms.get(e)?;
        let ratio = mine / c;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    /// Parse the canonical text form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(MultiPoly::zero());
        }
        let mut out = MultiPoly::zero();
        for term in text.split(" + ") {
            let mut parts = term.split(" * ");
            let coeff = parts.next().ok_or_else(|| Error::parse(0, "empty term"))?;
            let c = parse_rational(coeff)?;
            let mut e = [0u8; NVARS];
            for f in parts {
                let (name, power) = match f.split_once('^') {
                    Some((n, k)) => (n, k.parse::<u8>().map_err(|_| Error::parse(0, f))?),
                    None => (f, 1),
                };
                let idx = name
                    .strip_prefix('z')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i < NVARS)
                    .ok_or_else(|| Error::parse(0, format!("bad variable {name}")))?;
                e[idx] += power;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::parse(0, format!("bad coefficient {s}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// C(z_var + shift, depth) as a polynomial in z_var.
pub fn falling_binomial_poly(var: usize, shift: i64, depth: u32) -> MultiPoly {
    let z = MultiPoly::var(var);
    let mut acc = MultiPoly::one();
    for i in 0..depth as i64 {
        acc = &acc * &(&z + &MultiPoly::constant(int(shift - i)));
    }
    let fact: i64 = (1..=depth as i64).product();
    acc.scale(&rat(1, fact))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut s = c.to_string();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => s.push_str(&format!(" * z{i}")),
                    _ => s.push_str(&format!(" * z{i}^{k}")),
                }
            }
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&int(-1))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = [0u8; NVARS];
                for i in 0..NVARS {
                    e[i] = e1[i] + e2[i];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

pub fn point(values: [BigRational; 5]) -> [BigRational; NVARS] {
    let [a, b, c, d, e] = values;
    [BigRational::zero(), a, b, c, d, e, BigRational::zero()]
}
