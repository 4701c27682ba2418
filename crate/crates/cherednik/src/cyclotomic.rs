//! Exact arithmetic in cyclotomic number fields.
//!
//! A [`CycNum`] is an element of the field Q(zeta_m) for some conductor m,
//! stored as a rational coefficient vector over the power basis
//! 1, zeta, ..., zeta^(phi(m)-1), reduced modulo the m-th cyclotomic
//! polynomial. Values with different conductors are unified to the least
//! common multiple before any arithmetic, so mixed-conductor expressions
//! behave like elements of one big abelian extension of Q.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Euler totient by trial-division factorization.
pub fn phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for d in 1..=m {
        if m % d == 0 {
            out.push(d);
        }
    }
    out
}

/// Dense integer polynomials, low degree first. Helpers for computing
/// cyclotomic polynomials by exact division of x^m - 1.
fn poly_trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // Exact division of monic-led integer polynomials; remainder must vanish.
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero());
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
    while rem.len() - 1 >= dd && rem.iter().any(|c| !c.is_zero()) {
        let rd = rem.len() - 1;
        if rem[rd].is_zero() {
            rem.pop();
            continue;
        }
        let q = &rem[rd] / &lead;
        assert_eq!(&q * &lead, rem[rd], "non-exact division");
        quot[rd - dd] = q.clone();
        for i in 0..=dd {
            let t = &den[i] * &q;
            rem[rd - dd + i] -= t;
        }
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-zero remainder");
    quot
}

/// The m-th cyclotomic polynomial as dense integer coefficients,
/// constant term first, monic of degree phi(m).
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    fn rec(m: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        // x^m - 1 divided by the product of Phi_d over proper divisors d.
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        let mut result = num;
        for d in divisors(m) {
            if d == m {
                continue;
            }
            let pd = rec(d, memo);
            result = poly_div_exact(&result, &pd);
        }
        memo.insert(m, result.clone());
        result
    }
    static MEMO: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = memo.lock().unwrap();
    rec(m, &mut guard)
}

/// Per-conductor reduction data, computed once and shared.
struct FieldData {
    phi: usize,
    /// Row i expands zeta^(phi+i) over the power basis; enough rows for both
    /// embedding exponents (< m) and products of reduced elements (< 2 phi - 1).
    red: Vec<Vec<BigRational>>,
}

fn field_data(m: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(f) = guard.get(&m) {
        return f.clone();
    }
    let ph = phi(m) as usize;
    let poly = cyclotomic_polynomial(m);
    debug_assert_eq!(poly.len(), ph + 1);
    let max_exp = std::cmp::max(2 * ph.saturating_sub(1), m as usize - 1);
    let rows = if max_exp >= ph { max_exp - ph + 1 } else { 0 };
    let mut red: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    if rows > 0 {
        // zeta^phi = -(c_0 + c_1 zeta + ... + c_{phi-1} zeta^{phi-1})
        let base: Vec<BigRational> = (0..ph)
            .map(|j| BigRational::from(-poly[j].clone()))
            .collect();
        red.push(base);
        for i in 1..rows {
            let prev = red[i - 1].clone();
            let mut row = vec![BigRational::zero(); ph];
            // multiply by zeta: shift, folding the overflow through row 0
            for j in 0..ph - 1 {
                row[j + 1] = prev[j].clone();
            }
            let top = prev[ph - 1].clone();
            if !top.is_zero() {
                for j in 0..ph {
                    row[j] += &top * &red[0][j];
                }
            }
            red.push(row);
        }
    }
    let data = Arc::new(FieldData { phi: ph, red });
    guard.insert(m, data.clone());
    data
}

/// An element of Q(zeta_m). The conductor is part of the value; arithmetic
/// between different conductors unifies to the lcm first.
#[derive(Clone)]
pub struct CycNum {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        CycNum { conductor: 1, coeffs: vec![BigRational::one()] }
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycNum { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(k)))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        assert!(q != 0);
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// zeta_m^k, the chosen primitive m-th root of unity raised to k.
    pub fn zeta(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        let kk = k.rem_euclid(m as i64) as usize;
        let data = field_data(m);
        let mut raw = vec![BigRational::zero(); kk + 1];
        raw[kk] = BigRational::one();
        CycNum { conductor: m, coeffs: reduce_raw(raw, &data) }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Some(r) when the value lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Raise to a conductor that is a multiple of the current one.
    pub fn raise_to(&self, m: u32) -> CycNum {
        assert!(m % self.conductor == 0, "target conductor must be a multiple");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let data = field_data(m);
        let mut raw = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[k * step] = c.clone();
            }
        }
        CycNum { conductor: m, coeffs: reduce_raw(raw, &data) }
    }

    fn unify(&self, other: &CycNum) -> (CycNum, CycNum) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            let m = num::integer::lcm(self.conductor, other.conductor);
            (self.raise_to(m), other.raise_to(m))
        }
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        let (mut a, b) = self.unify(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        let (mut a, b) = self.unify(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> CycNum {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c = -c.clone();
        }
        a
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        let (a, b) = self.unify(other);
        let data = field_data(a.conductor);
        let ph = data.phi;
        let mut raw = vec![BigRational::zero(); 2 * ph - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                raw[i + j] += x * y;
            }
        }
        CycNum { conductor: a.conductor, coeffs: reduce_raw(raw, &data) }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rational(r.recip()));
        }
        let m = self.conductor;
        let modulus: Vec<BigRational> = cyclotomic_polynomial(m)
            .into_iter()
            .map(BigRational::from)
            .collect();
        let a: Vec<BigRational> = self.coeffs.clone();
        let (g, u) = rat_poly_ext_gcd(&a, &modulus);
        // Phi_m is irreducible, so the gcd is a non-zero constant.
        assert_eq!(g.len(), 1);
        assert!(!g[0].is_zero());
        let ginv = g[0].recip();
        let data = field_data(m);
        let mut raw: Vec<BigRational> = u.iter().map(|c| c * &ginv).collect();
        raw.resize(std::cmp::max(raw.len(), 1), BigRational::zero());
        Ok(CycNum { conductor: m, coeffs: reduce_raw(raw, &data) })
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self.mul(&other.inv()?))
    }

    /// Complex conjugation, the Galois automorphism zeta -> zeta^(m-1).
    pub fn conj(&self) -> CycNum {
        let m = self.conductor;
        if m <= 2 {
            return self.clone();
        }
        let data = field_data(m);
        let mut raw = vec![BigRational::zero(); (self.coeffs.len() - 1) * (m as usize - 1) + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (k * (m as usize - 1)) % m as usize;
                // exponents reduced mod m first; the table covers up to m-1
                raw[e] += c;
            }
        }
        raw.truncate(m as usize);
        CycNum { conductor: m, coeffs: reduce_raw(raw, &data) }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Rewrite over the smallest cyclotomic subfield that contains the value.
    /// Used for canonical display and serialization.
    pub fn reduce_conductor(&self) -> CycNum {
        if self.is_zero() {
            return CycNum::zero();
        }
        if let Some(r) = self.as_rational() {
            return CycNum::from_rational(r);
        }
        let m = self.conductor;
        for d in divisors(m) {
            if d == m {
                break;
            }
            if let Some(v) = self.try_express_in(d) {
                return v;
            }
        }
        self.clone()
    }

    /// Attempt to express the value in Q(zeta_d) for d dividing the conductor.
    fn try_express_in(&self, d: u32) -> Option<CycNum> {
        let m = self.conductor;
        let phd = phi(d) as usize;
        let phm = phi(m) as usize;
        // Basis vectors zeta_d^j embedded into Q(zeta_m), solved against self.
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(phd);
        for j in 0..phd {
            let b = CycNum::zeta(d, j as i64).raise_to(m);
            cols.push(b.coeffs);
        }
        let target = &self.coeffs;
        // Solve the phm x phd system by Gaussian elimination.
        let mut aug: Vec<Vec<BigRational>> = (0..phm)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(target[r].clone());
                row
            })
            .collect();
        let mut pivot_rows: Vec<usize> = Vec::new();
        let mut sol = vec![BigRational::zero(); phd];
        let mut r0 = 0;
        for col in 0..phd {
            let mut pr = None;
            for r in r0..phm {
                if !aug[r][col].is_zero() {
                    pr = Some(r);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            aug.swap(r0, pr);
            let inv = aug[r0][col].recip();
            for x in aug[r0].iter_mut() {
                *x *= &inv;
            }
            for r in 0..phm {
                if r != r0 && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for cc in 0..=phd {
                        let t = &f * &aug[r0][cc];
                        aug[r][cc] -= t;
                    }
                }
            }
            pivot_rows.push(col);
            r0 += 1;
            if r0 == phm {
                break;
            }
        }
        // Consistency: rows with all-zero lhs must have zero rhs.
        for r in r0..phm {
            if !aug[r][phd].is_zero() {
                return None;
            }
        }
        for (k, col) in pivot_rows.iter().enumerate() {
            sol[*col] = aug[k][phd].clone();
        }
        // Verify: free columns would make the expression non-unique, but the
        // embedded basis is linearly independent so every column is a pivot.
        if pivot_rows.len() != phd {
            return None;
        }
        let candidate = CycNum { conductor: d, coeffs: sol };
        if candidate.raise_to(m) == *self {
            Some(candidate)
        } else {
            None
        }
    }

    /// Coefficients over the power basis at the minimal conductor, as
    /// (conductor, list of (exponent, rational)) with zero entries dropped.
    pub fn terms_min(&self) -> (u32, Vec<(usize, BigRational)>) {
        let v = self.reduce_conductor();
        let terms = v
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
        (v.conductor, terms)
    }

    /// Deterministic hash key: numerator/denominator pairs at a given conductor.
    pub fn key_at(&self, m: u32) -> Vec<(BigInt, BigInt)> {
        let v = self.raise_to(m);
        v.coeffs
            .iter()
            .map(|c| (c.numer().clone(), c.denom().clone()))
            .collect()
    }
}

fn reduce_raw(mut raw: Vec<BigRational>, data: &Arc<FieldData>) -> Vec<BigRational> {
    let ph = data.phi;
    let mut out = vec![BigRational::zero(); ph];
    while raw.len() > ph {
        let e = raw.len() - 1;
        let c = raw.pop().unwrap();
        if !c.is_zero() {
            let row = &data.red[e - ph];
            for j in 0..ph {
                if !row[j].is_zero() {
                    raw[j] += &c * &row[j];
                }
            }
        }
    }
    for (j, c) in raw.into_iter().enumerate() {
        out[j] = c;
    }
    out
}

/// Extended gcd over Q[x]: returns (g, u) with u*a = g mod b.
fn rat_poly_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    fn trim(v: &mut Vec<BigRational>) {
        while v.len() > 1 && v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
    }
    fn is_zero_poly(v: &[BigRational]) -> bool {
        v.iter().all(|c| c.is_zero())
    }
    fn divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = num.to_vec();
        trim(&mut rem);
        let dd = den.len() - 1;
        let lead = den[dd].clone();
        let mut quot = vec![BigRational::zero(); std::cmp::max(rem.len().saturating_sub(dd), 1)];
        while !is_zero_poly(&rem) && rem.len() - 1 >= dd {
            let rd = rem.len() - 1;
            if rem[rd].is_zero() {
                rem.pop();
                continue;
            }
            let q = &rem[rd] / &lead;
            quot[rd - dd] = q.clone();
            for i in 0..=dd {
                let t = &den[i] * &q;
                rem[rd - dd + i] -= t;
            }
            trim(&mut rem);
        }
        trim(&mut quot);
        (quot, rem)
    }
    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let mut out = out;
        trim(&mut out);
        out
    }
    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = a.to_vec();
        if out.len() < b.len() {
            out.resize(b.len(), BigRational::zero());
        }
        for (j, y) in b.iter().enumerate() {
            out[j] -= y;
        }
        trim(&mut out);
        out
    }

    // Invariant: r0 = u0 * a (mod b_original), r1 = u1 * a (mod b_original).
    let mut r0 = a.to_vec();
    trim(&mut r0);
    let mut r1 = b.to_vec();
    trim(&mut r1);
    let mut u0 = vec![BigRational::one()];
    let mut u1 = vec![BigRational::zero()];
    while !is_zero_poly(&r1) {
        let (q, r) = divmod(&r0, &r1);
        let new_u = sub(&u0, &mul(&q, &u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = new_u;
    }
    (r0, u0)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.unify(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, terms) = self.terms_min();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "q({},{})", m, k)?;
            } else {
                write!(f, "{}*q({},{})", c, m, k)?;
            }
        }
        Ok(())
    }
}

/// True when the value is a negative rational; used for display sign folding.
pub fn is_negative_rational(v: &CycNum) -> bool {
    v.as_rational().map_or(false, |r| r.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(k: i64) -> CycNum {
        CycNum::from_int(k)
    }

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        let as_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            v.into_iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(9)), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(20)), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
    }

    #[test]
    fn primitive_root_relations() {
        let i = CycNum::zeta(4, 1);
        assert_eq!(i.mul(&i), int(-1));
        let z3 = CycNum::zeta(3, 1);
        let s = z3.mul(&z3).add(&z3).add(&int(1));
        assert!(s.is_zero());
        let z5 = CycNum::zeta(5, 1);
        let mut s5 = CycNum::one();
        let mut p = CycNum::one();
        for _ in 0..4 {
            p = p.mul(&z5);
            s5 = s5.add(&p);
        }
        assert!(s5.is_zero());
    }

    #[test]
    fn unification_identities() {
        // zeta_6 = -zeta_3^2
        let z6 = CycNum::zeta(6, 1);
        let z3sq = CycNum::zeta(3, 2);
        assert_eq!(z6, z3sq.neg());
        // zeta_12^3 = i
        assert_eq!(CycNum::zeta(12, 3), CycNum::zeta(4, 1));
        // zeta_12^2 = zeta_6
        assert_eq!(CycNum::zeta(12, 2), CycNum::zeta(6, 1));
    }

    #[test]
    fn inverses() {
        let z12 = CycNum::zeta(12, 1);
        assert!(z12.mul(&z12.inv().unwrap()).is_one());
        let v = int(1).add(&CycNum::zeta(3, 1));
        assert!(v.mul(&v.inv().unwrap()).is_one());
        assert!(CycNum::zero().inv().is_err());
        // mixed conductors: (zeta_4 + zeta_3) has an inverse in Q(zeta_12)
        let w = CycNum::zeta(4, 1).add(&CycNum::zeta(3, 1));
        assert!(w.mul(&w.inv().unwrap()).is_one());
    }

    #[test]
    fn conductor_reduction() {
        let v = CycNum::zeta(12, 3); // equals i
        let r = v.reduce_conductor();
        assert_eq!(r.conductor(), 4);
        // sqrt(3) = zeta_12 - zeta_12^5 is real and needs the full field
        let s3 = CycNum::zeta(12, 1).sub(&CycNum::zeta(12, 5));
        assert!(s3.is_real());
        assert_eq!(s3.reduce_conductor().conductor(), 12);
        assert_eq!(s3.mul(&s3), int(3));
        // rationals collapse to conductor 1
        let two = CycNum::zeta(5, 1).mul(&CycNum::zeta(5, 4)).add(&CycNum::one());
        assert_eq!(two.reduce_conductor().conductor(), 1);
        assert_eq!(two, int(2));
    }

    #[test]
    fn conjugation() {
        let z8 = CycNum::zeta(8, 1);
        assert_eq!(z8.conj(), CycNum::zeta(8, 7));
        let re = z8.add(&z8.conj()); // sqrt(2)
        assert!(re.is_real());
        assert_eq!(re.mul(&re), int(2));
        assert!(!z8.is_real());
    }

    #[test]
    fn display_round_values() {
        assert_eq!(format!("{}", int(-3)), "-3");
        assert_eq!(format!("{}", CycNum::from_frac(1, 2)), "1/2");
        assert_eq!(format!("{}", CycNum::zeta(4, 1)), "q(4,1)");
        assert_eq!(format!("{}", CycNum::zero()), "0");
    }
}
