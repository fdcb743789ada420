//! Exact arithmetic in small finite fields.
//!
//! Three layers live here:
//!
//! * [`Fp`] and [`Fq2`] are self-describing value types (each element carries
//!   its characteristic) used for scalar work and report serialization.
//! * [`GaloisField`] is a table-driven context for `F_{p^k}` with `p^k <= 1024`.
//!   Elements are plain codes ([`Gf`]); the context performs the arithmetic.
//!   Enumerations over `P^n(F_q)` and the Gauss-map samples over `F_27` go
//!   through it.
//! * [`field_arith`] is the checked, operator-tagged entry point.
//!
//! Moduli are fixed per characteristic so every printed coordinate is
//! reproducible: `t^2+t+1` for `p = 2`, `t^2 - n` with `n` the least
//! quadratic non-residue for odd `p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Error, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) {
        return usage(format!("{p} is not prime"));
    }
    if p >= 256 {
        return usage(format!("characteristic {p} is too large (need p < 256)"));
    }
    Ok(())
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero residue modulo a prime.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

/// Least quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u32) -> u32 {
    assert!(p % 2 == 1, "least_nonresidue needs an odd prime");
    (2..p)
        .find(|&n| pow_mod(n as u64, ((p - 1) / 2) as u64, p as u64) == (p - 1) as u64)
        .expect("every odd prime has a non-residue")
}

/// Coefficients `(c0, c1)` with `t^2 = c0 + c1*t` in the fixed model of `F_{p^2}`.
pub fn quadratic_relation(p: u32) -> (u32, u32) {
    if p == 2 {
        (1, 1)
    } else {
        (least_nonresidue(p), 0)
    }
}

/// A generator of `F_p^*` (smallest one).
pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let n = p - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&f| pow_mod(g as u64, (n / f) as u64, p as u64) != 1)
        })
        .expect("prime fields are cyclic")
}

/// Binomial coefficient `C(n, k) mod p` by Lucas's theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p64, k % p64);
        if ki > ni {
            return 0;
        }
        // small binomial, exact in u64 for digits < 256
        let mut c = 1u64;
        for j in 0..ki {
            c = c * (ni - j) % p64 * inv_mod(((j + 1) % p64) as u32, p) as u64 % p64;
        }
        acc = acc * c % p64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

// ---------------------------------------------------------------------------
// Prime field values

/// A residue class in `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self {
            value: value.rem_euclid(p as i64) as u32,
            p,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return domain("inverse of zero");
        }
        Ok(Self {
            value: inv_mod(self.value, self.p),
            p: self.p,
        })
    }

    pub fn pow(self, e: u64) -> Self {
        Self {
            value: pow_mod(self.value as u64, e, self.p as u64) as u32,
            p: self.p,
        }
    }

    fn same_field(self, other: Self) -> Result<()> {
        if self.p != other.p {
            return usage(format!("mixed fields F_{} and F_{}", self.p, other.p));
        }
        Ok(())
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// The operator impls panic on mixed characteristics; `field_arith` is the
// checked route.
impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "mixed fields");
        Fp {
            value: (self.value + rhs.value) % self.p,
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "mixed fields");
        Fp {
            value: (self.value + self.p - rhs.value) % self.p,
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "mixed fields");
        Fp {
            value: self.value * rhs.value % self.p,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

// ---------------------------------------------------------------------------
// Quadratic extension values

/// An element `a + b*t` of `F_{p^2}` in the fixed model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fq2 {
    a: u32,
    b: u32,
    p: u32,
}

impl Fq2 {
    pub fn new(a: i64, b: i64, p: u32) -> Result<Self> {
        check_prime(p)?;
        let m = p as i64;
        Ok(Self {
            a: a.rem_euclid(m) as u32,
            b: b.rem_euclid(m) as u32,
            p,
        })
    }

    /// The class of `t`.
    pub fn t(p: u32) -> Result<Self> {
        Self::new(0, 1, p)
    }

    pub fn coords(self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn in_prime_field(self) -> bool {
        self.b == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut acc = Fq2 {
            a: 1 % self.p,
            b: 0,
            p: self.p,
        };
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return domain("inverse of zero");
        }
        let q = (self.p as u64) * (self.p as u64);
        Ok(self.pow(q - 2))
    }

    /// `x -> x^p`, written out from `t^p`: `t+1` for `p = 2`, `-t` otherwise.
    pub fn frobenius(self) -> Self {
        let p = self.p;
        if p == 2 {
            Fq2 {
                a: (self.a + self.b) % 2,
                b: self.b,
                p,
            }
        } else {
            Fq2 {
                a: self.a,
                b: (p - self.b) % p,
                p,
            }
        }
    }

    /// Code used by [`GaloisField`] for the same element.
    pub fn code(self) -> Gf {
        Gf(self.a + self.b * self.p)
    }

    pub fn from_code(x: Gf, p: u32) -> Result<Self> {
        if x.0 >= p * p {
            return usage(format!("code {} out of range for F_{}", x.0, p * p));
        }
        Self::new((x.0 % p) as i64, (x.0 / p) as i64, p)
    }

    pub fn parse(s: &str, p: u32) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"a+b*t\", got {s:?}"));
        let (a, rest) = s.split_once('+').ok_or_else(bad)?;
        let b = rest.strip_suffix("*t").ok_or_else(bad)?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        Self::new(a, b, p)
    }
}

impl fmt::Display for Fq2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*t", self.a, self.b)
    }
}

impl Add for Fq2 {
    type Output = Fq2;
    fn add(self, rhs: Fq2) -> Fq2 {
        assert_eq!(self.p, rhs.p, "mixed fields");
        Fq2 {
            a: (self.a + rhs.a) % self.p,
            b: (self.b + rhs.b) % self.p,
            p: self.p,
        }
    }
}

impl Sub for Fq2 {
    type Output = Fq2;
    fn sub(self, rhs: Fq2) -> Fq2 {
        self + (-rhs)
    }
}

impl Neg for Fq2 {
    type Output = Fq2;
    fn neg(self) -> Fq2 {
        Fq2 {
            a: (self.p - self.a) % self.p,
            b: (self.p - self.b) % self.p,
            p: self.p,
        }
    }
}

impl Mul for Fq2 {
    type Output = Fq2;
    fn mul(self, rhs: Fq2) -> Fq2 {
        assert_eq!(self.p, rhs.p, "mixed fields");
        let p = self.p;
        let (c0, c1) = quadratic_relation(p);
        let bd = self.b * rhs.b % p;
        Fq2 {
            a: (self.a * rhs.a + bd * c0) % p,
            b: (self.a * rhs.b + self.b * rhs.a + bd * c1) % p,
            p,
        }
    }
}

// ---------------------------------------------------------------------------
// Checked operator-tagged arithmetic

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldElem {
    Prime(Fp),
    Quad(Fq2),
}

/// Applies `op` to one (`Inv`, `Pow`) or two operands of the same field.
pub fn field_arith(op: FieldOp, operands: &[FieldElem]) -> Result<FieldElem> {
    use FieldElem::*;
    let arity = match op {
        FieldOp::Inv | FieldOp::Pow(_) => 1,
        _ => 2,
    };
    if operands.len() != arity {
        return usage(format!(
            "{op:?} takes {arity} operand(s), got {}",
            operands.len()
        ));
    }
    match (op, operands) {
        (FieldOp::Inv, [Prime(a)]) => Ok(Prime(a.inv()?)),
        (FieldOp::Inv, [Quad(a)]) => Ok(Quad(a.inv()?)),
        (FieldOp::Pow(e), [Prime(a)]) => Ok(Prime(a.pow(e))),
        (FieldOp::Pow(e), [Quad(a)]) => Ok(Quad(a.pow(e))),
        (_, [Prime(a), Prime(b)]) => {
            a.same_field(*b)?;
            Ok(Prime(match op {
                FieldOp::Add => *a + *b,
                FieldOp::Sub => *a - *b,
                _ => *a * *b,
            }))
        }
        (_, [Quad(a), Quad(b)]) => {
            if a.p != b.p {
                return usage(format!("mixed fields F_{}^2 and F_{}^2", a.p, b.p));
            }
            Ok(Quad(match op {
                FieldOp::Add => *a + *b,
                FieldOp::Sub => *a - *b,
                _ => *a * *b,
            }))
        }
        _ => usage("operands from different fields"),
    }
}

// ---------------------------------------------------------------------------
// Table-driven F_{p^k}

/// Element code of a [`GaloisField`]: the base-`p` digits are the
/// coefficients of `1, t, t^2, ...`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct Gf(pub u32);

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u32,
    degree: u32,
    order: u32,
    /// Monic modulus, low coefficient first.
    modulus: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u16>,
    exp: Vec<u16>,
    log: Vec<u16>,
    frob: Vec<u16>,
}

const MAX_ORDER: u32 = 1024;

impl GaloisField {
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// The field with `q` elements, `q` a prime power.
    pub fn of_order(q: u32) -> Result<Self> {
        let Some(p) = (2..=q).find(|&d| q.is_multiple_of(d)) else {
            return usage(format!("{q} is not a prime power"));
        };
        let (mut rest, mut degree) = (q, 0);
        while rest % p == 0 {
            rest /= p;
            degree += 1;
        }
        if rest != 1 {
            return usage(format!("{q} is not a prime power"));
        }
        Self::new(p, degree)
    }

    pub fn new(p: u32, degree: u32) -> Result<Self> {
        check_prime(p)?;
        if degree == 0 {
            return usage("extension degree must be positive");
        }
        let order = (p as u64)
            .checked_pow(degree)
            .filter(|&q| q <= MAX_ORDER as u64);
        let Some(order) = order else {
            return usage(format!(
                "F_{p}^{degree} exceeds the table limit {MAX_ORDER}"
            ));
        };
        let order = order as u32;
        let modulus = match degree {
            1 => vec![0, 1],
            2 => {
                let (c0, c1) = quadratic_relation(p);
                vec![(p - c0) % p, (p - c1) % p, 1]
            }
            _ => first_irreducible(p, degree),
        };
        debug_assert!(is_irreducible(&modulus, p));

        let d = degree as usize;
        let digits = |x: u32| -> Vec<u32> {
            let mut v = vec![0; d];
            let mut x = x;
            for c in v.iter_mut() {
                *c = x % p;
                x /= p;
            }
            v
        };
        let code = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let polymul = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let mut prod = vec![0u32; 2 * d - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for k in (d..prod.len()).rev() {
                let c = prod[k];
                if c != 0 {
                    for (j, &m) in modulus.iter().enumerate().take(d) {
                        let idx = k - d + j;
                        prod[idx] = (prod[idx] + (p - c) * m) % p;
                    }
                    prod[k] = 0;
                }
            }
            prod.truncate(d);
            prod
        };

        let q = order as usize;
        let mut add = vec![0u16; q * q];
        for x in 0..order {
            let dx = digits(x);
            for y in 0..order {
                let dy = digits(y);
                let s: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x as usize * q + y as usize] = code(&s) as u16;
            }
        }
        let neg: Vec<u16> = (0..order)
            .map(|x| {
                let v: Vec<u32> = digits(x).iter().map(|c| (p - c) % p).collect();
                code(&v) as u16
            })
            .collect();

        // find a primitive element by brute force
        let group = order - 1;
        let mut exp = Vec::new();
        for g in 1..order {
            let dg = digits(g);
            let mut powers = Vec::with_capacity(group as usize);
            let mut cur = digits(1);
            for _ in 0..group {
                powers.push(code(&cur) as u16);
                cur = polymul(&cur, &dg);
            }
            let mut seen = vec![false; q];
            if powers
                .iter()
                .all(|&x| !std::mem::replace(&mut seen[x as usize], true))
            {
                exp = powers;
                break;
            }
        }
        assert_eq!(
            exp.len(),
            group as usize,
            "multiplicative group must be cyclic"
        );
        let mut log = vec![0u16; q];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u16;
        }
        let mut exp2 = exp.clone();
        exp2.extend_from_slice(&exp);

        let mut field = GaloisField {
            p,
            degree,
            order,
            modulus,
            add,
            neg,
            exp: exp2,
            log,
            frob: Vec::new(),
        };
        field.frob = (0..order)
            .map(|x| field.pow(Gf(x), p as u64).0 as u16)
            .collect();
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Gf {
        Gf(0)
    }

    pub fn one(&self) -> Gf {
        Gf(1)
    }

    /// The class of `t` (equal to the prime-field element 0 when `degree = 1`
    /// is meaningless, so this is only offered for proper extensions).
    pub fn t(&self) -> Result<Gf> {
        if self.degree < 2 {
            return usage("prime field has no generator t");
        }
        Ok(Gf(self.p))
    }

    pub fn from_int(&self, n: i64) -> Gf {
        Gf(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.order).map(Gf)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Gf> {
        (1..self.order).map(Gf)
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        Gf(self.add[a.0 as usize * self.order as usize + b.0 as usize] as u32)
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        Gf(self.neg[a.0 as usize] as u32)
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf(0);
        }
        let i = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        Gf(self.exp[i] as u32)
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.0 == 0 {
            return domain("inverse of zero");
        }
        let group = (self.order - 1) as usize;
        let l = self.log[a.0 as usize] as usize;
        Ok(Gf(self.exp[(group - l) % group] as u32))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return Gf(1);
        }
        if a.0 == 0 {
            return Gf(0);
        }
        let group = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Gf(self.exp[((l * (e % group)) % group) as usize] as u32)
    }

    #[inline]
    pub fn frobenius(&self, a: Gf) -> Gf {
        Gf(self.frob[a.0 as usize] as u32)
    }

    pub fn in_prime_field(&self, a: Gf) -> bool {
        a.0 < self.p
    }

    pub fn coords(&self, a: Gf) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.degree as usize);
        let mut x = a.0;
        for _ in 0..self.degree {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    /// `a+b*t+c*t^2...`; prime-field elements print as plain residues.
    pub fn format(&self, a: Gf) -> String {
        let c = self.coords(a);
        if self.degree == 1 {
            return c[0].to_string();
        }
        let mut s = c[0].to_string();
        for (i, x) in c.iter().enumerate().skip(1) {
            if i == 1 {
                s.push_str(&format!("+{x}*t"));
            } else {
                s.push_str(&format!("+{x}*t^{i}"));
            }
        }
        s
    }

    pub fn sum(&self, xs: impl IntoIterator<Item = Gf>) -> Gf {
        xs.into_iter().fold(Gf(0), |acc, x| self.add(acc, x))
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    // b monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &c) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - lead) * c) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for lower in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = lower;
            for _ in 0..d {
                g.push((x % p as usize) as u32);
                x /= p as usize;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn first_irreducible(p: u32, degree: u32) -> Vec<u32> {
    let count = (p as usize).pow(degree);
    for lower in 0..count {
        let mut f = Vec::with_capacity(degree as usize + 1);
        let mut x = lower;
        for _ in 0..degree {
            f.push((x % p as usize) as u32);
            x /= p as usize;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
