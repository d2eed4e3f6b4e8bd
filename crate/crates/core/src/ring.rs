//! Exact arithmetic in F_{p^m} and the Galois rings GR(p^n, m).
//!
//! A [`RingDescriptor`] fixes `p`, the precision `n`, the degree `m` and a
//! monic modulus whose reduction mod `p` is irreducible. Elements are stored
//! as [`Elem`] values: `m` integer coefficients of a residue polynomial, each
//! in `[0, p^n)`. Elements do not carry their descriptor; every operation goes
//! through the descriptor. [`RingElement`] bundles the two for the checked
//! public API.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 4;

/// `p^n` must stay below this so that products fit in a `u64`.
const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// Raw coefficients `c_0 + c_1 x + ... + c_{m-1} x^{m-1}`; unused slots are zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub [u32; MAX_DEGREE]);

impl Elem {
    pub const ZERO: Elem = Elem([0; MAX_DEGREE]);

    #[inline]
    pub fn is_zero(&self) -> bool {
        *self == Elem::ZERO
    }

    #[inline]
    pub fn scalar(c: u32) -> Elem {
        let mut e = Elem::ZERO;
        e.0[0] = c;
        e
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    p: u64,
    n: u32,
    m: usize,
    pn: u64,
    /// Monic modulus, `modulus[m] == 1`, lower coefficients reduced mod `p^n`.
    modulus: [u64; MAX_DEGREE + 1],
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds F_{p^m} (`n == 1`) or GR(p^n, m).
///
/// With `m > 1` and no modulus, the smallest irreducible monic polynomial is
/// chosen, comparing coefficient lists `[c_0, ..., c_{m-1}]` lexicographically.
pub fn make_ring(p: u64, n: u32, m: usize, modulus: Option<&[u64]>) -> Result<RingDescriptor> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || m == 0 {
        return Err(Error::InvalidRing("precision and degree must be at least 1".into()));
    }
    if m > MAX_DEGREE {
        return Err(Error::InvalidRing(format!("degree {m} exceeds the supported maximum {MAX_DEGREE}")));
    }
    let pn = p
        .checked_pow(n)
        .filter(|&v| v < MAX_CHARACTERISTIC)
        .ok_or_else(|| Error::InvalidRing(format!("{p}^{n} exceeds 2^31")))?;

    let mut coeffs = [0u64; MAX_DEGREE + 1];
    match modulus {
        Some(given) => {
            if given.len() != m + 1 || given[m] != 1 {
                return Err(Error::InvalidRing(format!("modulus must be monic of degree {m}")));
            }
            for (slot, &c) in coeffs.iter_mut().zip(given) {
                *slot = c % pn;
            }
            if m > 1 {
                let reduced: Vec<u64> = given.iter().map(|c| c % p).collect();
                if !fp_poly::is_irreducible(&reduced, p) {
                    return Err(Error::ReducibleModulus { p });
                }
            }
        }
        None if m == 1 => {
            coeffs[1] = 1;
        }
        None => {
            let found = smallest_irreducible(p, m)
                .ok_or_else(|| Error::InvalidRing(format!("no irreducible polynomial found for p={p}, m={m}")))?;
            coeffs[..=m].copy_from_slice(&found);
        }
    }
    if m == 1 {
        // Z/p^n: the residue polynomial is the constant, the modulus only records x + c.
        coeffs = [0; MAX_DEGREE + 1];
        coeffs[1] = 1;
    }
    Ok(RingDescriptor { p, n, m, pn, modulus: coeffs })
}

fn smallest_irreducible(p: u64, m: usize) -> Option<Vec<u64>> {
    let total = p.checked_pow(m as u32)?;
    (0..total).find_map(|code| {
        // c_0 is the most significant digit of the enumeration order.
        let mut poly = vec![0u64; m + 1];
        let mut rest = code;
        for i in (0..m).rev() {
            poly[i] = rest % p;
            rest /= p;
        }
        poly[m] = 1;
        fp_poly::is_irreducible(&poly, p).then_some(poly)
    })
}

impl RingDescriptor {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// `p^n`, the additive order of `1`.
    pub fn characteristic(&self) -> u64 {
        self.pn
    }

    /// Number of elements of the residue field.
    pub fn residue_field_size(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn is_field(&self) -> bool {
        self.n == 1
    }

    /// Coefficients `[c_0, ..., c_m]` of the monic modulus.
    pub fn modulus(&self) -> Vec<u64> {
        self.modulus[..=self.m].to_vec()
    }

    /// Same `p`, `m` and modulus representatives at another precision.
    pub fn at_precision(&self, n: u32) -> Result<RingDescriptor> {
        if n == 0 {
            return Err(Error::InvalidRing("precision must be at least 1".into()));
        }
        let pn = self
            .p
            .checked_pow(n)
            .filter(|&v| v < MAX_CHARACTERISTIC)
            .ok_or_else(|| Error::InvalidRing(format!("{}^{n} exceeds 2^31", self.p)))?;
        let mut modulus = self.modulus;
        for c in modulus.iter_mut() {
            *c %= pn;
        }
        Ok(RingDescriptor { p: self.p, n, m: self.m, pn, modulus })
    }

    pub fn residue_field(&self) -> RingDescriptor {
        self.at_precision(1).expect("precision 1 is always representable")
    }

    /// True when `other` describes the same unramified extension, i.e. `digit_lift`
    /// and reduction between the two are meaningful.
    pub fn compatible_with(&self, other: &RingDescriptor) -> bool {
        if self.p != other.p || self.m != other.m {
            return false;
        }
        let q = self.p.pow(self.n.min(other.n));
        self.modulus.iter().zip(&other.modulus).all(|(a, b)| a % q == b % q)
    }

    pub fn check_same(&self, other: &RingDescriptor) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!("{self} vs {other}")))
        }
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::scalar(1)
    }

    pub fn from_int(&self, v: i64) -> Elem {
        Elem::scalar(v.rem_euclid(self.pn as i64) as u32)
    }

    /// Element from integer coefficients; values are reduced into `[0, p^n)`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Elem> {
        if coeffs.len() > self.m {
            return Err(Error::InvalidRing(format!("expected at most {} coefficients", self.m)));
        }
        let mut e = Elem::ZERO;
        for (slot, &c) in e.0.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(self.pn as i64) as u32;
        }
        Ok(e)
    }

    /// Element from canonical coefficients, rejecting values outside `[0, p^n)`.
    pub fn from_canonical(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() != self.m {
            return Err(Error::InvalidRing(format!("expected {} coefficients, got {}", self.m, coeffs.len())));
        }
        let mut e = Elem::ZERO;
        for (slot, &c) in e.0.iter_mut().zip(coeffs) {
            if c >= self.pn {
                return Err(Error::InvalidRing(format!("coefficient {c} outside [0, {})", self.pn)));
            }
            *slot = c as u32;
        }
        Ok(e)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        a.0[..self.m].iter().map(|&c| c as u64).collect()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let mut out = Elem::ZERO;
        for i in 0..self.m {
            let s = a.0[i] as u64 + b.0[i] as u64;
            out.0[i] = if s >= self.pn { s - self.pn } else { s } as u32;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let mut out = Elem::ZERO;
        for i in 0..self.m {
            let s = a.0[i] as u64 + self.pn - b.0[i] as u64;
            out.0[i] = if s >= self.pn { s - self.pn } else { s } as u32;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.sub(Elem::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.m == 1 {
            return Elem::scalar(((a.0[0] as u64 * b.0[0] as u64) % self.pn) as u32);
        }
        let m = self.m;
        let mut t = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..m {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..m {
                t[i + j] = (t[i + j] + a.0[i] as u64 * b.0[j] as u64) % self.pn;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = t[k];
            if c == 0 {
                continue;
            }
            let neg_c = self.pn - c;
            for i in 0..m {
                t[k - m + i] = (t[k - m + i] + neg_c * self.modulus[i]) % self.pn;
            }
            t[k] = 0;
        }
        let mut out = Elem::ZERO;
        for i in 0..m {
            out.0[i] = t[i] as u32;
        }
        out
    }

    /// `dst += factor * src`, elementwise.
    pub fn axpy(&self, dst: &mut [Elem], factor: Elem, src: &[Elem]) {
        if factor.is_zero() {
            return;
        }
        if self.m == 1 {
            let f = factor.0[0] as u64;
            let pn = self.pn;
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0[0] != 0 {
                    d.0[0] = ((d.0[0] as u64 + f * s.0[0] as u64) % pn) as u32;
                }
            }
        } else {
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d = self.add(*d, self.mul(factor, *s));
                }
            }
        }
    }

    pub fn scale_slice(&self, v: &mut [Elem], factor: Elem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, factor);
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// An element is a unit iff it is nonzero modulo `p`.
    pub fn is_unit(&self, a: Elem) -> bool {
        a.0[..self.m].iter().any(|&c| c as u64 % self.p != 0)
    }

    /// Exact inverse: inverted in the residue field, then refined by Newton
    /// (Hensel) steps `x <- x (2 - a x)` until precision `n` is reached.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let field = self.residue_field();
        let a0 = self.reduce_to(a, &field);
        let x0 = field.pow(a0, field.residue_field_size() - 2);
        let mut x = x0;
        let mut correct = 1u32;
        let two = self.from_int(2);
        while correct < self.n {
            x = self.mul(x, self.sub(two, self.mul(a, x)));
            correct *= 2;
        }
        debug_assert_eq!(self.mul(a, x), self.one());
        Ok(x)
    }

    /// Reduction into a ring of lower (or equal) precision.
    #[inline]
    pub fn reduce_to(&self, a: Elem, target: &RingDescriptor) -> Elem {
        let mut out = Elem::ZERO;
        for i in 0..self.m {
            out.0[i] = (a.0[i] as u64 % target.pn) as u32;
        }
        out
    }

    /// The canonical lift: same integer coefficient representatives.
    pub fn digit_lift(&self, a: Elem, target: &RingDescriptor) -> Result<Elem> {
        if !self.compatible_with(target) || target.n < self.n {
            return Err(Error::DescriptorMismatch(format!("cannot lift from {self} to {target}")));
        }
        Ok(a)
    }

    /// `a * p^k`.
    pub fn mul_p_pow(&self, a: Elem, k: u32) -> Elem {
        if k >= self.n {
            return Elem::ZERO;
        }
        let f = self.p.pow(k);
        let mut out = Elem::ZERO;
        for i in 0..self.m {
            out.0[i] = ((a.0[i] as u64 * f) % self.pn) as u32;
        }
        out
    }

    /// Divides every coefficient by `p^k`, landing in GR(p^{n-k}, m).
    pub fn exact_div_p(&self, a: Elem, k: u32) -> Result<(Elem, RingDescriptor)> {
        if k >= self.n {
            return Err(Error::InvalidRing(format!("cannot divide by p^{k} at precision {}", self.n)));
        }
        let target = self.at_precision(self.n - k)?;
        let f = self.p.pow(k);
        let mut out = Elem::ZERO;
        for i in 0..self.m {
            let c = a.0[i] as u64;
            if c % f != 0 {
                return Err(Error::NotDivisible { k });
            }
            out.0[i] = (c / f) as u32;
        }
        Ok((out, target))
    }

    /// Largest `k <= n` with `p^k` dividing every coefficient.
    pub fn valuation(&self, a: Elem) -> u32 {
        let mut k = 0;
        let mut f = 1u64;
        while k < self.n {
            f *= self.p;
            if a.0[..self.m].iter().any(|&c| c as u64 % f != 0) {
                return k;
            }
            k += 1;
        }
        self.n
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        let mut e = Elem::ZERO;
        for i in 0..self.m {
            e.0[i] = rng.gen_range(0..self.pn) as u32;
        }
        e
    }

    /// All elements of a small ring, in counting order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let total = self.pn.pow(self.m as u32);
        (0..total).map(move |mut code| {
            let mut e = Elem::ZERO;
            for i in 0..self.m {
                e.0[i] = (code % self.pn) as u32;
                code /= self.pn;
            }
            e
        })
    }

    pub fn format(&self, a: Elem) -> String {
        if self.m == 1 {
            a.0[0].to_string()
        } else {
            let parts: Vec<String> = a.0[..self.m].iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.n, self.m) {
            (1, 1) => write!(f, "F_{}", self.p),
            (1, m) => write!(f, "F_{}^{}", self.p, m),
            (n, 1) => write!(f, "Z/{}^{}", self.p, n),
            (n, m) => write!(f, "GR({}^{}, {})", self.p, n, m),
        }
    }
}

/// An element bundled with its ring, for checked arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: RingDescriptor,
    value: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl RingElement {
    pub fn new(ring: RingDescriptor, value: Elem) -> Self {
        RingElement { ring, value }
    }

    pub fn from_int(ring: RingDescriptor, v: i64) -> Self {
        RingElement { ring, value: ring.from_int(v) }
    }

    pub fn from_coeffs(ring: RingDescriptor, coeffs: &[i64]) -> Result<Self> {
        Ok(RingElement { ring, value: ring.from_coeffs(coeffs)? })
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.ring.coeffs(self.value)
    }

    pub fn arith(self, op: ArithOp, other: RingElement) -> Result<RingElement> {
        self.ring.check_same(&other.ring)?;
        let r = &self.ring;
        let value = match op {
            ArithOp::Add => r.add(self.value, other.value),
            ArithOp::Sub => r.sub(self.value, other.value),
            ArithOp::Mul => r.mul(self.value, other.value),
        };
        Ok(RingElement { ring: self.ring, value })
    }

    pub fn invert(self) -> Result<RingElement> {
        Ok(RingElement { ring: self.ring, value: self.ring.inv(self.value)? })
    }

    pub fn digit_lift(self, target: RingDescriptor) -> Result<RingElement> {
        Ok(RingElement { ring: target, value: self.ring.digit_lift(self.value, &target)? })
    }

    pub fn reduce(self, target: RingDescriptor) -> Result<RingElement> {
        if !self.ring.compatible_with(&target) || target.n > self.ring.n {
            return Err(Error::DescriptorMismatch(format!("cannot reduce {} to {}", self.ring, target)));
        }
        Ok(RingElement { ring: target, value: self.ring.reduce_to(self.value, &target) })
    }

    pub fn exact_div_p(self, k: u32) -> Result<RingElement> {
        let (value, ring) = self.ring.exact_div_p(self.value, k)?;
        Ok(RingElement { ring, value })
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format(self.value))
    }
}

/// Polynomials over F_p as coefficient vectors, lowest degree first.
pub(crate) mod fp_poly {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = trim(a.to_vec());
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * lead_inv % p;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * bc % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0) % p) % p)
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(&lead) = x.last() {
            let inv = inv_mod(lead, p);
            for c in x.iter_mut() {
                *c = *c * inv % p;
            }
        }
        x
    }

    fn pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, modulus, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), modulus, p);
            }
            b = rem(&mul(&b, &b, p), modulus, p);
            e >>= 1;
        }
        acc
    }

    /// Degree-`m` polynomial is irreducible iff it shares no factor with
    /// `x^{p^i} - x` for `i <= m / 2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let f = trim(f.iter().map(|c| c % p).collect());
        let deg = match f.len() {
            0 | 1 => return false,
            l => l - 1,
        };
        let x = vec![0, 1];
        let mut power = x.clone();
        for _ in 1..=deg / 2 {
            power = pow_mod(&power, p, &f, p);
            let g = gcd(&f, &sub(&power, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(r: &RingDescriptor, v: i64) -> Elem {
        r.from_int(v)
    }

    #[test]
    fn descriptors() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        assert!(f5.is_field());
        assert_eq!(f5.characteristic(), 5);
        let z25 = make_ring(5, 2, 1, None).unwrap();
        assert_eq!(z25.characteristic(), 25);
        let f4 = make_ring(2, 1, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f4.residue_field_size(), 4);
        assert_eq!(make_ring(2, 1, 2, None).unwrap(), f4);
        assert_eq!(make_ring(6, 1, 1, None), Err(Error::NotPrime(6)));
        assert_eq!(make_ring(2, 1, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus { p: 2 }));
        // x^2 + 1 is irreducible mod 3 and the smallest candidate in coefficient order.
        assert_eq!(make_ring(3, 1, 2, None).unwrap().modulus(), vec![1, 0, 1]);
    }

    #[test]
    fn arithmetic_examples() {
        let z25 = make_ring(5, 2, 1, None).unwrap();
        assert_eq!(z25.mul(el(&z25, 7), el(&z25, 18)), z25.one());
        let f5 = make_ring(5, 1, 1, None).unwrap();
        assert_eq!(f5.add(el(&f5, 3), el(&f5, 4)), el(&f5, 2));
        let f4 = make_ring(2, 1, 2, None).unwrap();
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f4.mul(x, x), f4.from_coeffs(&[1, 1]).unwrap());
    }

    #[test]
    fn inversion_examples() {
        let z25 = make_ring(5, 2, 1, None).unwrap();
        assert_eq!(z25.inv(el(&z25, 7)).unwrap(), el(&z25, 18));
        assert_eq!(z25.inv(el(&z25, 2)).unwrap(), el(&z25, 13));
        assert_eq!(z25.inv(el(&z25, 5)), Err(Error::NotAUnit));
    }

    #[test]
    fn inversion_is_exhaustively_correct() {
        for ring in [
            make_ring(5, 3, 1, None).unwrap(),
            make_ring(2, 3, 2, None).unwrap(),
            make_ring(3, 2, 2, None).unwrap(),
            make_ring(7, 1, 3, None).unwrap(),
        ] {
            for a in ring.elements() {
                match ring.inv(a) {
                    Ok(b) => assert_eq!(ring.mul(a, b), ring.one(), "{ring}: {a:?}"),
                    Err(Error::NotAUnit) => assert!(!ring.is_unit(a)),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn lift_and_divide() {
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let z25 = f5.at_precision(2).unwrap();
        let z125 = f5.at_precision(3).unwrap();
        assert_eq!(f5.digit_lift(el(&f5, 3), &z25).unwrap(), el(&z25, 3));
        assert_eq!(z25.digit_lift(el(&z25, 24), &z125).unwrap(), el(&z125, 24));
        assert_eq!(f5.digit_lift(Elem::ZERO, &z125).unwrap(), Elem::ZERO);
        assert!(z25.digit_lift(el(&z25, 1), &f5).is_err());

        let (q, r) = z125.exact_div_p(el(&z125, 50), 1).unwrap();
        assert_eq!((q, r), (el(&z25, 10), z25));
        assert_eq!(z125.exact_div_p(Elem::ZERO, 2).unwrap().0, Elem::ZERO);
        assert_eq!(z25.exact_div_p(el(&z25, 7), 1), Err(Error::NotDivisible { k: 1 }));
    }

    #[test]
    fn checked_elements() {
        let z25 = make_ring(5, 2, 1, None).unwrap();
        let f5 = make_ring(5, 1, 1, None).unwrap();
        let a = RingElement::from_int(z25, 7);
        let b = RingElement::from_int(z25, 18);
        assert_eq!(a.arith(ArithOp::Mul, b).unwrap(), RingElement::from_int(z25, 1));
        assert!(matches!(
            a.arith(ArithOp::Add, RingElement::from_int(f5, 1)),
            Err(Error::DescriptorMismatch(_))
        ));
        assert_eq!(a.invert().unwrap(), b);
    }

    #[test]
    fn compatibility() {
        let gr = make_ring(2, 3, 2, Some(&[1, 1, 1])).unwrap();
        let other = make_ring(2, 2, 2, Some(&[5, 1, 1])).unwrap();
        assert!(gr.compatible_with(&other));
        let f4 = make_ring(2, 1, 2, None).unwrap();
        assert!(f4.compatible_with(&gr));
        assert!(!f4.compatible_with(&make_ring(3, 1, 2, None).unwrap()));
    }
}
