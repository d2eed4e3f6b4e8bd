//! Exact cyclotomic arithmetic: cyclotomic polynomials, the conjugate product
//! `N = Π_{(l,r)=1, l<r/2} P(ζ^l)`, the nonvanishing criterion for `P(ζ)` in
//! characteristic `p`, and the characteristic threshold `d^{φ(d)/2}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::is_prime;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `Σ |a_m|`.
    pub fn height_sum(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        assert!(divisor.coeffs[dd].is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k - dd + j] -= &c * d;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    pub fn rem_monic(&self, divisor: &IntPolynomial) -> IntPolynomial {
        self.div_rem_monic(divisor).1
    }

    /// Reduction modulo `x^r - 1`: exponents folded mod `r`, `r` coefficients.
    pub fn fold(&self, r: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); r];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k % r] += c;
        }
        out
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let p = BigInt::from(p);
        let mut out: Vec<u64> = self.coeffs.iter().map(|c| c.mod_floor(&p).to_u64().expect("residue fits")).collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}x^{k}")?,
            }
        }
        Ok(())
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            while m % d == 0 {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn cyclotomic_table() -> &'static Mutex<HashMap<u64, IntPolynomial>> {
    static TABLE: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_r`, by exact division of `x^r - 1` by `Φ_d` for the proper divisors `d` of `r`.
pub fn cyclotomic(r: u64) -> IntPolynomial {
    assert!(r >= 1, "cyclotomic polynomials are indexed from 1");
    if let Some(p) = cyclotomic_table().lock().expect("cyclotomic table").get(&r) {
        return p.clone();
    }
    let mut poly = IntPolynomial::monomial(r as usize).sub(&IntPolynomial::from_i64(&[1]));
    for d in (1..r).filter(|d| r % d == 0) {
        let (q, rem) = poly.div_rem_monic(&cyclotomic(d));
        debug_assert!(rem.is_zero());
        poly = q;
    }
    cyclotomic_table().lock().expect("cyclotomic table").entry(r).or_insert(poly).clone()
}

/// `P mod (x^r - 1)` has `a_l = a_{r-l}` for `1 <= l < r`, which makes `P(ζ)` real.
pub fn is_symmetric(p: &IntPolynomial, r: u64) -> bool {
    let a = p.fold(r as usize);
    (1..r as usize).all(|l| a[l] == a[r as usize - l])
}

/// `N = Π_{(l,r)=1, l<r/2} P(ζ^l)` computed in `Z[x]/(Φ_r)`. May be zero.
pub fn conjugate_product(p: &IntPolynomial, r: u64) -> Result<BigInt> {
    if r <= 2 {
        return Err(Error::OrderTooSmall(r));
    }
    if !is_symmetric(p, r) {
        return Err(Error::NotRealAtRoot);
    }
    let ru = r as usize;
    let a = p.fold(ru);
    let phi = cyclotomic(r);
    let mut product = IntPolynomial::constant(BigInt::one());
    for l in (1..ru).filter(|&l| 2 * l < ru && l.gcd(&ru) == 1) {
        // P(x^l) with exponents folded mod r, since x^r ≡ 1 mod Φ_r
        let mut conj = vec![BigInt::zero(); ru];
        for (m, c) in a.iter().enumerate() {
            conj[(m * l) % ru] += c;
        }
        let conj = IntPolynomial::new(conj).rem_monic(&phi);
        product = product.mul(&conj).rem_monic(&phi);
    }
    if !product.is_constant() {
        return Err(Error::NonConstantProduct);
    }
    Ok(product.coeff(0))
}

/// Monic gcd over `F_p` of two polynomials given by residues, lowest degree first.
fn gcd_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let trim = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let inv = |x: u64| {
        // Fermat, p prime
        let (mut base, mut e, mut acc) = (x % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let (mut f, mut g) = (trim(a.to_vec()), trim(b.to_vec()));
    while !g.is_empty() {
        let lead_inv = inv(*g.last().expect("nonempty"));
        while f.len() >= g.len() {
            let shift = f.len() - g.len();
            let c = f.last().expect("nonempty") * lead_inv % p;
            for (j, &gj) in g.iter().enumerate() {
                f[shift + j] = (f[shift + j] + p - c * gj % p) % p;
            }
            f = trim(f);
            if f.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    if let Some(&lead) = f.last() {
        let li = inv(lead);
        f.iter_mut().for_each(|c| *c = *c * li % p);
    }
    f
}

/// True when no primitive `r`-th root of unity in `F̄_p` is a root of `P mod p`,
/// i.e. `gcd(P mod p, Φ_r mod p)` is constant.
pub fn gcd_route_nonvanishing(p_poly: &IntPolynomial, r: u64, p: u64) -> bool {
    gcd_mod_p(&p_poly.reduce_mod(p), &cyclotomic(r).reduce_mod(p), p).len() <= 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub r: u64,
    pub p: u64,
    /// `D = Σ |a_m|`.
    #[serde(serialize_with = "as_string")]
    pub d: BigInt,
    pub phi_r: u64,
    /// `D^{φ(r)/2}`.
    #[serde(serialize_with = "as_string")]
    pub bound: BigInt,
    #[serde(serialize_with = "as_string")]
    pub n: BigInt,
    pub p_exceeds_bound: bool,
    pub p_coprime_to_r: bool,
    pub p_divides_n: bool,
    /// `gcd(P mod p, Φ_r mod p)` is constant.
    pub gcd_with_cyclotomic_trivial: bool,
    /// Both hypotheses hold and `p ∤ N`: `P(ζ) ≠ 0` for every primitive `r`-th root `ζ` in characteristic `p`.
    pub conclusion: bool,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl LemmaReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.p_exceeds_bound && self.p_coprime_to_r
    }
}

pub fn lemma41(p_poly: &IntPolynomial, r: u64, p: u64) -> Result<LemmaReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = conjugate_product(p_poly, r)?;
    if n.is_zero() {
        return Err(Error::ZeroConjugateProduct);
    }
    let d = p_poly.height_sum();
    let phi_r = euler_phi(r);
    let bound = num_traits::pow(d.clone(), (phi_r / 2) as usize);
    if n.abs() > bound {
        return Err(Error::InternalAxiomFailure(format!("|N| = {} exceeds D^(φ(r)/2) = {bound}", n.abs())));
    }
    let pb = BigInt::from(p);
    let p_exceeds_bound = pb > bound;
    let p_coprime_to_r = r % p != 0;
    let p_divides_n = (&n % &pb).is_zero();
    let gcd_trivial = gcd_route_nonvanishing(p_poly, r, p);
    let conclusion = p_exceeds_bound && p_coprime_to_r && !p_divides_n;
    // for p ∤ r, p | N exactly when some primitive root kills P mod p
    if p_coprime_to_r && gcd_trivial == p_divides_n {
        return Err(Error::RoutesDisagree);
    }
    Ok(LemmaReport {
        r,
        p,
        d,
        phi_r,
        bound,
        n,
        p_exceeds_bound,
        p_coprime_to_r,
        p_divides_n,
        gcd_with_cyclotomic_trivial: gcd_trivial,
        conclusion,
    })
}

/// `(d^{φ(d)/2}, φ(d))`.
pub fn kaplansky_threshold(d: u64) -> Result<(BigInt, u64)> {
    if d <= 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let phi = euler_phi(d);
    Ok((num_traits::pow(BigInt::from(d), (phi / 2) as usize), phi))
}

/// Parses `"a0,a1,..."`.
pub fn parse_polynomial(s: &str) -> std::result::Result<IntPolynomial, String> {
    let coeffs = s
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|e| format!("bad coefficient {t:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}
