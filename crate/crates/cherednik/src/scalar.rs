//! The coefficient field for the algebra: rational functions in the
//! deformation parameters with cyclotomic constants.
//!
//! A [`Scalar`] is a quotient of two multivariate polynomials in the
//! variables `t`, the class parameters `c0, c1, ...`, and the reduction
//! parameter `z`, with [`CycNum`] coefficients. Every value is kept in a
//! canonical form: numerator and denominator are coprime and the
//! denominator is monic in graded lexicographic order, so structural
//! equality is semantic equality.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// A polynomial variable. The order makes `t` least significant and `z`
/// most significant when monomials are compared.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// The Planck-style deformation parameter.
    T,
    /// Reflection-class parameter with the class index.
    C(u8),
    /// The value of the central element in a quotient; free otherwise.
    Z,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => write!(f, "t"),
            Var::C(k) => write!(f, "c{}", k),
            Var::Z => write!(f, "z"),
        }
    }
}

/// A power product of variables in canonical sorted form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PMonomial {
    /// Sorted by variable, exponents strictly positive.
    factors: Vec<(Var, u32)>,
}

impl PMonomial {
    pub fn unit() -> Self {
        PMonomial { factors: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        PMonomial { factors: vec![(v, 1)] }
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for &(v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        PMonomial { factors: map.into_iter().collect() }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &PMonomial) -> PMonomial {
        let mut map: BTreeMap<Var, u32> = self.factors.iter().cloned().collect();
        for &(v, e) in &other.factors {
            *map.entry(v).or_insert(0) += e;
        }
        PMonomial { factors: map.into_iter().collect() }
    }

    /// Componentwise quotient when `other` divides `self`.
    pub fn div(&self, other: &PMonomial) -> Option<PMonomial> {
        let mut map: BTreeMap<Var, u32> = self.factors.iter().cloned().collect();
        for &(v, e) in &other.factors {
            let slot = map.get_mut(&v)?;
            if *slot < e {
                return None;
            }
            *slot -= e;
        }
        map.retain(|_, e| *e > 0);
        Some(PMonomial { factors: map.into_iter().collect() })
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }
}

impl Ord for PMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // Equal degree: lexicographic with the largest variable most
        // significant, walking both factor lists from the top.
        let mut a = self.factors.iter().rev();
        let mut b = other.factors.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        // The monomial holding the larger variable wins.
                        return va.cmp(&vb);
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
                (None, None) => return Ordering::Equal,
                // Unreachable at equal total degree, but keep it total.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
            }
        }
    }
}

impl PartialOrd for PMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// A multivariate polynomial with cyclotomic coefficients, stored sparsely
/// with no zero terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    terms: BTreeMap<PMonomial, CycNum>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(CycNum::one())
    }

    pub fn constant(c: CycNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PMonomial::unit(), c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(PMonomial::var(v), CycNum::one());
        Poly { terms }
    }

    pub fn term(m: PMonomial, c: CycNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&PMonomial::unit())
                .map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMonomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<CycNum> {
        if self.terms.is_empty() {
            return Some(CycNum::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&PMonomial::unit()) {
                return Some(c.clone());
            }
        }
        None
    }

    fn insert_add(&mut self, m: PMonomial, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let s = slot.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, co)| (m.clone(), co.mul(c)))
                .collect(),
        }
    }

    /// Leading term in graded lexicographic order.
    pub fn leading(&self) -> Option<(&PMonomial, &CycNum)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().flat_map(|m| m.vars()).max()
    }

    /// Exact division; `None` when `den` does not divide `self`.
    pub fn div_exact(&self, den: &Poly) -> Option<Poly> {
        assert!(!den.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let (lm, lc) = {
            let (m, c) = den.leading().unwrap();
            (m.clone(), c.clone())
        };
        let lc_inv = lc.inv().expect("non-zero leading coefficient");
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&lm)?;
            let qc = rc.mul(&lc_inv);
            let step = Poly::term(qm, qc);
            quot = quot.add(&step);
            rem = rem.sub(&step.mul(den));
        }
        Some(quot)
    }

    /// View as a univariate polynomial in `v`: coefficient polynomials by
    /// ascending exponent.
    fn to_univar(&self, v: Var) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            let rest = m.div(&PMonomial::from_pairs(&[(v, e as u32)])).unwrap();
            out[e].insert_add(rest, c.clone());
        }
        out
    }

    fn from_univar(coeffs: Vec<Poly>, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (e, p) in coeffs.into_iter().enumerate() {
            let shift = Poly::term(PMonomial::from_pairs(&[(v, e as u32)]), CycNum::one());
            out = out.add(&p.mul(&shift));
        }
        out
    }

    /// Divide by the leading coefficient so the top term has coefficient one.
    fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = c.inv().expect("non-zero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Content with respect to `v`: the gcd of the univariate coefficients.
    fn content(&self, v: Var) -> Poly {
        let mut g = Poly::zero();
        for c in self.to_univar(v) {
            if !c.is_zero() {
                g = poly_gcd(&g, &c);
            }
        }
        g
    }

    /// Monic gcd of `self` and `other`; zero polynomials are absorbed.
    pub fn gcd(&self, other: &Poly) -> Poly {
        poly_gcd(self, other)
    }

    /// Evaluate at a point, all variables bound.
    pub fn evaluate(&self, bind: &[(Var, CycNum)]) -> Result<CycNum> {
        let lookup = |v: Var| -> Result<CycNum> {
            bind.iter()
                .find(|&&(w, _)| w == v)
                .map(|(_, val)| val.clone())
                .ok_or_else(|| Error::UnboundParameter(v.to_string()))
        };
        let mut acc = CycNum::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors.iter() {
                let base = lookup(*v)?;
                let mut p = CycNum::one();
                for _ in 0..*e {
                    p = p.mul(&base);
                }
                t = t.mul(&p);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
fn prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let mut ra = a.to_univar(v);
    let rb = b.to_univar(v);
    let db = rb.len() - 1;
    let lcb = rb[db].clone();
    loop {
        while ra.len() > 1 && ra.last().map_or(false, |c| c.is_zero()) {
            ra.pop();
        }
        let da = ra.len() - 1;
        if ra.iter().all(|c| c.is_zero()) || da < db {
            break;
        }
        let lca = ra[da].clone();
        for c in ra.iter_mut() {
            *c = c.mul(&lcb);
        }
        for i in 0..=db {
            let t = lca.mul(&rb[i]);
            ra[da - db + i] = ra[da - db + i].sub(&t);
        }
    }
    Poly::from_univar(ra, v)
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let va = a.max_var();
    let vb = b.max_var();
    let v = match (va, vb) {
        (None, _) | (_, None) => return Poly::one(),
        (Some(x), Some(y)) => std::cmp::max(x, y),
    };
    let ca = a.content(v);
    let cb = b.content(v);
    let cont = poly_gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !g.is_zero() {
        let r = prem(&f, &g, v);
        f = g;
        g = if r.is_zero() {
            Poly::zero()
        } else {
            let rc = r.content(v);
            r.div_exact(&rc).expect("content divides")
        };
    }
    // Primitive part times the shared content, normalized monic.
    let fc = f.content(v);
    let prim = f.div_exact(&fc).expect("content divides");
    cont.mul(&prim).monic()
}

/// Display order: total degree descending, then `t` terms before `c`
/// terms before `z` terms. Internal grlex order ranks the variables the
/// other way, so the printer sorts on its own key.
fn display_cmp(a: &PMonomial, b: &PMonomial) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match b.degree().cmp(&a.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    let mut ia = a.factors.iter();
    let mut ib = b.factors.iter();
    loop {
        match (ia.next(), ib.next()) {
            (Some(&(va, ea)), Some(&(vb, eb))) => {
                if va != vb {
                    return va.cmp(&vb);
                }
                if ea != eb {
                    return eb.cmp(&ea);
                }
            }
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
        }
    }
}

fn fmt_poly(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    use num::Signed;
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut ordered: Vec<(&PMonomial, &CycNum)> = p.terms.iter().collect();
    ordered.sort_by(|x, y| display_cmp(x.0, y.0));
    let mut first = true;
    for (m, c) in ordered {
        let (is_neg, mag) = match c.as_rational() {
            Some(r) if r.is_negative() => (true, CycNum::from_rational(-r)),
            _ => (false, c.clone()),
        };
        if first {
            if is_neg {
                write!(f, "-")?;
            }
        } else if is_neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let coeff_str = format!("{}", mag);
        let multi_term = coeff_str.contains(" + ");
        if m.is_unit() {
            if multi_term {
                write!(f, "({})", coeff_str)?;
            } else {
                write!(f, "{}", coeff_str)?;
            }
        } else if mag.is_one() {
            write!(f, "{}", m)?;
        } else if multi_term {
            write!(f, "({})*{}", coeff_str, m)?;
        } else {
            write!(f, "{}*{}", coeff_str, m)?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}

/// An element of the scalar field: `num / den` with coprime parts and a
/// monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn normalized(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Scalar { num: Poly::zero(), den: Poly::one() });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("non-zero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Scalar { num, den })
    }

    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(k: i64) -> Self {
        Scalar { num: Poly::constant(CycNum::from_int(k)), den: Poly::one() }
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Scalar { num: Poly::constant(CycNum::from_frac(p, q)), den: Poly::one() }
    }

    pub fn from_cyc(c: CycNum) -> Self {
        Scalar { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    pub fn var(v: Var) -> Self {
        Scalar { num: Poly::var(v), den: Poly::one() }
    }

    pub fn t() -> Self {
        Scalar::var(Var::T)
    }

    pub fn c(k: u8) -> Self {
        Scalar::var(Var::C(k))
    }

    pub fn z() -> Self {
        Scalar::var(Var::Z)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_minus_one(&self) -> bool {
        self.den.is_one()
            && self
                .num
                .as_constant()
                .map_or(false, |c| c.add(&CycNum::one()).is_zero())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_cyc(&self) -> Option<CycNum> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar { num: self.num.add(&other.num), den: Poly::one() };
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::normalized(num, den).expect("denominator product is non-zero")
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar { num: self.num.mul(&other.num), den: Poly::one() };
        }
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        Scalar::normalized(num, den).expect("denominator product is non-zero")
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Scalar::normalized(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        self.mul(&Scalar::from_int(k))
    }

    /// Evaluate at a point; every occurring variable must be bound.
    pub fn evaluate(&self, bind: &[(Var, CycNum)]) -> Result<CycNum> {
        let d = self.den.evaluate(bind)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let n = self.num.evaluate(bind)?;
        n.div(&d)
    }

    /// Replace one variable by a scalar value throughout.
    pub fn substitute(&self, v: Var, value: &Scalar) -> Result<Scalar> {
        let subst_poly = |p: &Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for (m, c) in p.terms() {
                let e = m.exponent(v);
                let rest = m.div(&PMonomial::from_pairs(&[(v, e)])).unwrap();
                let base = Scalar::from_poly(Poly::term(rest, c.clone()));
                acc = acc.add(&base.mul(&value.pow(e)));
            }
            acc
        };
        let n = subst_poly(&self.num);
        let d = subst_poly(&self.den);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        n.div(&d)
    }

    /// A size measure used to pick cheap pivots during elimination.
    pub fn complexity(&self) -> usize {
        self.num.num_terms() + 2 * self.den.num_terms()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_poly(&self.num, f);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        if self.den.num_terms() > 1 {
            write!(f, "({})", self.den)
        } else {
            write!(f, "{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Scalar {
        Scalar::t()
    }

    fn c0() -> Scalar {
        Scalar::c(0)
    }

    #[test]
    fn monomial_order_is_graded() {
        let m_t = PMonomial::var(Var::T);
        let m_c = PMonomial::var(Var::C(0));
        let m_t2 = PMonomial::from_pairs(&[(Var::T, 2)]);
        let m_tc = PMonomial::from_pairs(&[(Var::T, 1), (Var::C(0), 1)]);
        assert!(m_t < m_c, "larger variable wins at equal degree");
        assert!(m_t < m_t2, "degree dominates");
        assert!(m_t2 < m_tc);
        assert!(m_tc < PMonomial::from_pairs(&[(Var::C(0), 2)]));
    }

    #[test]
    fn difference_of_squares() {
        let p = t().add(&c0()).mul(&t().sub(&c0()));
        let q = t().mul(&t()).sub(&c0().mul(&c0()));
        assert_eq!(p, q);
    }

    #[test]
    fn quotients_normalize() {
        // (t^2 - c0^2)/(t - c0) reduces to t + c0
        let num = t().mul(&t()).sub(&c0().mul(&c0()));
        let s = num.div(&t().sub(&c0())).unwrap();
        assert_eq!(s, t().add(&c0()));
        assert!(s.is_polynomial());
        // a pure constant ratio with cyclotomic coefficients
        let z3 = Scalar::from_cyc(crate::cyclotomic::CycNum::zeta(3, 1));
        let v = z3.mul(&t()).add(&z3.mul(&c0()));
        let r = v.div(&t().add(&c0())).unwrap();
        assert_eq!(r, z3);
    }

    #[test]
    fn inverse_and_errors() {
        let s = t().div(&c0()).unwrap();
        assert_eq!(s.inv().unwrap(), c0().div(&t()).unwrap());
        assert!(Scalar::zero().inv().is_err());
        let prod = s.mul(&s.inv().unwrap());
        assert!(prod.is_one());
    }

    #[test]
    fn evaluation() {
        use crate::cyclotomic::CycNum;
        // (t^2 - c0)/(t - 1) at t = 2, c0 = 1 gives 3
        let s = t()
            .mul(&t())
            .sub(&c0())
            .div(&t().sub(&Scalar::one()))
            .unwrap();
        let v = s
            .evaluate(&[(Var::T, CycNum::from_int(2)), (Var::C(0), CycNum::from_int(1))])
            .unwrap();
        assert_eq!(v, CycNum::from_int(3));
        let pole = s.evaluate(&[(Var::T, CycNum::from_int(1)), (Var::C(0), CycNum::from_int(0))]);
        assert!(matches!(pole, Err(Error::PoleAtPoint)));
        let unbound = s.evaluate(&[(Var::T, CycNum::from_int(2))]);
        assert!(matches!(unbound, Err(Error::UnboundParameter(_))));
    }

    #[test]
    fn substitution() {
        let z = Scalar::z();
        let p = z.mul(&z).add(&z).add(&Scalar::one());
        let at_one = p.substitute(Var::Z, &Scalar::one()).unwrap();
        assert_eq!(at_one, Scalar::from_int(3));
        let swapped = p.substitute(Var::Z, &t()).unwrap();
        assert_eq!(swapped, t().mul(&t()).add(&t()).add(&Scalar::one()));
    }

    #[test]
    fn display_forms() {
        assert_eq!(format!("{}", t()), "t");
        assert_eq!(format!("{}", t().sub(&c0())), "t - c0");
        assert_eq!(format!("{}", Scalar::from_frac(-1, 2).mul(&c0())), "-1/2*c0");
        let q = t().div(&t().add(&Scalar::one())).unwrap();
        assert_eq!(format!("{}", q), "t/(t + 1)");
    }

    #[test]
    fn gcd_handles_shared_multivariate_factor() {
        // (t + c0)^2 * (t - c1)  vs  (t + c0) * (t + c1)
        let a = t()
            .add(&c0())
            .pow(2)
            .mul(&t().sub(&Scalar::c(1)))
            .num()
            .clone();
        let b = t().add(&c0()).mul(&t().add(&Scalar::c(1))).num().clone();
        let g = a.gcd(&b);
        let expect = t().add(&c0()).num().clone();
        assert_eq!(g, expect);
    }
}
