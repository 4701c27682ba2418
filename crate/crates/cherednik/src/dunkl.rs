//! The polynomial representation of the algebra through divided
//! difference operators.
//!
//! The algebra acts on polynomials in the `x` variables: `x_k` by
//! multiplication, group elements through the dual matrix action, and
//! `y_j` by the deformed directional derivative
//!
//! `T_j(f) = t d_j(f) - sum_s (2 c_s / (1 - e_s)) a_s(y_j) (f - s.f)/a_s`
//!
//! where `e_s` is the non-trivial eigenvalue of `s` on the dual space and
//! `a_s` the root form of the mirror. The difference `f - s.f` vanishes
//! on the mirror, so the quotient is again a polynomial and the whole
//! computation stays exact. These operators commute with each other and
//! reproduce the defining commutation relations, which makes the module
//! an independent referee for the PBW product.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::pbw::{AlgebraContext, PBWElement};
use crate::scalar::Scalar;

/// A polynomial in the `x` variables with scalar coefficients, stored
/// sparsely by exponent vector.
#[derive(Clone, PartialEq, Debug)]
pub struct XPoly {
    n: usize,
    terms: BTreeMap<Vec<u8>, Scalar>,
}

/// Graded lexicographic comparison of exponent vectors.
fn exp_cmp(a: &[u8], b: &[u8]) -> std::cmp::Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl XPoly {
    pub fn zero(n: usize) -> Self {
        XPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, s: Scalar) -> Self {
        let mut p = XPoly::zero(n);
        p.add_term(vec![0; n], s);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut e = vec![0u8; n];
        e[i] = 1;
        let mut p = XPoly::zero(n);
        p.add_term(e, Scalar::one());
        p
    }

    pub fn monomial(exp: Vec<u8>) -> Self {
        let n = exp.len();
        let mut p = XPoly::zero(n);
        p.add_term(exp, Scalar::one());
        p
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Scalar)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&v| v as u32).sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, exp: Vec<u8>, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                let v = slot.add(&s);
                if v.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(exp, s);
            }
        }
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, s) in &other.terms {
            out.add_term(e.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, other: &XPoly) -> XPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> XPoly {
        XPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, s)| (e.clone(), s.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> XPoly {
        if s.is_zero() {
            return XPoly::zero(self.n);
        }
        XPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        assert_eq!(self.n, other.n);
        let mut out = XPoly::zero(self.n);
        for (ea, sa) in &self.terms {
            for (eb, sb) in &other.terms {
                let e: Vec<u8> = ea.iter().zip(eb.iter()).map(|(&a, &b)| a + b).collect();
                out.add_term(e, sa.mul(sb));
            }
        }
        out
    }

    /// Partial derivative along basis direction `j`.
    pub fn partial(&self, j: usize) -> XPoly {
        let mut out = XPoly::zero(self.n);
        for (e, s) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[j] -= 1;
            out.add_term(e2, s.scale_int(e[j] as i64));
        }
        out
    }

    fn leading(&self) -> Option<(&Vec<u8>, &Scalar)> {
        self.terms.iter().max_by(|a, b| exp_cmp(a.0, b.0))
    }

    /// Exact division; fails with `DivisionFailure` when the divisor does
    /// not divide exactly.
    pub fn div_exact(&self, den: &XPoly) -> Result<XPoly> {
        assert_eq!(self.n, den.n);
        let (dm, dc) = den.leading().ok_or(Error::ZeroDenominator)?;
        let dm = dm.clone();
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = XPoly::zero(self.n);
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let mut qe = vec![0u8; self.n];
            for i in 0..self.n {
                if rm[i] < dm[i] {
                    return Err(Error::DivisionFailure);
                }
                qe[i] = rm[i] - dm[i];
            }
            let qc = rc.mul(&dc_inv);
            let mut step = XPoly::zero(self.n);
            step.add_term(qe, qc);
            quot = quot.add(&step);
            rem = rem.sub(&step.mul(den));
        }
        Ok(quot)
    }
}

/// The divided-difference action of an algebra on polynomials.
pub struct DunklRep {
    ctx: Arc<AlgebraContext>,
}

impl DunklRep {
    pub fn new(ctx: Arc<AlgebraContext>) -> Self {
        DunklRep { ctx }
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    fn n(&self) -> usize {
        self.ctx.group().rank()
    }

    /// The dual action of a group element on a polynomial.
    pub fn act_group(&self, w: u16, f: &XPoly) -> XPoly {
        let g = self.ctx.group();
        let n = self.n();
        let mut out = XPoly::zero(n);
        for (e, s) in f.terms() {
            let mut acc = XPoly::constant(n, s.clone());
            for k in 0..n {
                if e[k] == 0 {
                    continue;
                }
                let mut image = XPoly::zero(n);
                for (j, gamma) in g.x_action(w, k) {
                    image = image.add(&XPoly::var(n, j).scale(&Scalar::from_cyc(gamma)));
                }
                for _ in 0..e[k] {
                    acc = acc.mul(&image);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// The root form of a reflection as a linear polynomial.
    fn root_form(&self, alpha: &[CycNum]) -> XPoly {
        let n = self.n();
        let mut out = XPoly::zero(n);
        for (j, a) in alpha.iter().enumerate() {
            if !a.is_zero() {
                out = out.add(&XPoly::var(n, j).scale(&Scalar::from_cyc(a.clone())));
            }
        }
        out
    }

    /// The deformed directional derivative along basis direction `j`.
    pub fn dunkl(&self, j: usize, f: &XPoly) -> Result<XPoly> {
        let g = self.ctx.group();
        let mut out = f.partial(j).scale(self.ctx.t_param());
        for r in g.reflections() {
            let aj = &r.alpha[j];
            if aj.is_zero() {
                continue;
            }
            let denom = CycNum::one().sub(&r.eig_dual);
            let ratio = CycNum::from_int(2).div(&denom)?.mul(aj);
            let coeff = self.ctx.c_param(r.class_index).mul(&Scalar::from_cyc(ratio));
            let moved = self.act_group(r.elem, f);
            let num = f.sub(&moved);
            if num.is_zero() {
                continue;
            }
            let quot = num.div_exact(&self.root_form(&r.alpha))?;
            out = out.sub(&quot.scale(&coeff));
        }
        Ok(out)
    }

    /// Apply a full algebra element: group part first, then the deformed
    /// derivatives, then multiplication by the `x` part.
    pub fn act_element(&self, e: &PBWElement, f: &XPoly) -> Result<XPoly> {
        assert!(
            std::ptr::eq(self.ctx.as_ref(), e.context().as_ref())
                || self.ctx.group().spec() == e.context().group().spec(),
            "element from a different algebra"
        );
        let n = self.n();
        let mut out = XPoly::zero(n);
        for (mono, s) in e.terms() {
            let mut cur = self.act_group(mono.w, f);
            for j in 0..n {
                for _ in 0..mono.b[j] {
                    cur = self.dunkl(j, &cur)?;
                }
            }
            let mut xpart = XPoly::zero(n);
            xpart.add_term(mono.a.clone(), Scalar::one());
            out = out.add(&cur.mul(&xpart).scale(s));
        }
        Ok(out)
    }

    /// All monomials of total degree at most `d`.
    fn monomials_up_to(&self, d: u32) -> Vec<XPoly> {
        let n = self.n();
        let mut exps: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for e in &exps {
                let used: u32 = e.iter().map(|&v| v as u32).sum();
                for v in 0..=(d - used.min(d)) as u8 {
                    let mut e2 = e.clone();
                    e2.push(v);
                    next.push(e2);
                }
            }
            exps = next;
        }
        exps.into_iter().map(XPoly::monomial).collect()
    }

    /// Check the representation property on every monomial up to the
    /// given degree:
    ///
    /// 1. the commutation relation `[T_j, x_k] = S_jk` as operators,
    /// 2. equivariance `w T_j w^(-1) = sum_i (w y_j)_i T_i`,
    /// 3. pairwise commutativity of the deformed derivatives.
    pub fn verify(&self, max_degree: u32) -> Result<()> {
        let g = self.ctx.group().clone();
        let n = self.n();
        let basis = self.monomials_up_to(max_degree);
        let fail = |msg: String| Error::ConstructionInvariantViolated(msg);
        // (1) commutation relation against the algebra's defect element
        for j in 0..n {
            for k in 0..n {
                use crate::pbw::ContextElements;
                let defect = self.ctx.commutator_defect(j, k);
                for f in &basis {
                    let xk = XPoly::var(n, k);
                    let lhs = self
                        .dunkl(j, &xk.mul(f))?
                        .sub(&xk.mul(&self.dunkl(j, f)?));
                    let rhs = self.act_element(&defect, f)?;
                    if lhs != rhs {
                        return Err(fail(format!(
                            "[T{}, x{}] disagrees with the defect on {:?}",
                            j + 1,
                            k + 1,
                            f
                        )));
                    }
                }
            }
        }
        // (2) equivariance under every group element
        for w in 0..g.order() as u16 {
            for j in 0..n {
                for f in &basis {
                    let lhs = self.act_group(w, &self.dunkl(j, &self.act_group(g.inv(w), f))?);
                    let mut rhs = XPoly::zero(n);
                    for (i, gamma) in g.y_action(w, j) {
                        rhs = rhs.add(&self.dunkl(i, f)?.scale(&Scalar::from_cyc(gamma)));
                    }
                    if lhs != rhs {
                        return Err(fail(format!(
                            "equivariance fails for w={} T{}",
                            g.name(w),
                            j + 1
                        )));
                    }
                }
            }
        }
        // (3) the deformed derivatives commute
        for j in 0..n {
            for k in j + 1..n {
                for f in &basis {
                    let a = self.dunkl(j, &self.dunkl(k, f)?)?;
                    let b = self.dunkl(k, &self.dunkl(j, f)?)?;
                    if a != b {
                        return Err(fail(format!(
                            "T{} and T{} do not commute on {:?}",
                            j + 1,
                            k + 1,
                            f
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupData, GroupSpec};
    use crate::pbw::ContextElements;

    fn ctx(name: &str) -> Arc<AlgebraContext> {
        let spec: GroupSpec = name.parse().unwrap();
        AlgebraContext::new(Arc::new(GroupData::build(&spec).unwrap()))
    }

    #[test]
    fn polynomial_division_is_exact() {
        // (x1^2 - x2^2) / (x1 - x2) = x1 + x2
        let x1 = XPoly::var(2, 0);
        let x2 = XPoly::var(2, 1);
        let num = x1.mul(&x1).sub(&x2.mul(&x2));
        let den = x1.sub(&x2);
        let q = num.div_exact(&den).unwrap();
        assert_eq!(q, x1.add(&x2));
        // non-divisible case errors
        assert!(matches!(
            x1.div_exact(&x2),
            Err(Error::DivisionFailure)
        ));
    }

    #[test]
    fn dunkl_action_on_small_cases() {
        // cyclic group of order 3 on one variable: T(x^3) has an invariant
        // numerator, so the reflection terms contribute
        let h = ctx("G3,1,1");
        let rep = DunklRep::new(h.clone());
        let x = XPoly::var(1, 0);
        let x3 = x.mul(&x).mul(&x);
        let tf = rep.dunkl(0, &x3).unwrap();
        // T(x^3) = 3 t x^2 - c0 * q0 - c1 * q1 with polynomial quotients;
        // the exact value is pinned by the verified relations below, here
        // just confirm the degree drops by one and t enters linearly
        assert!(tf.degree() <= 2);
        let t3x2 = x.mul(&x).scale(&Scalar::t().scale_int(3));
        let no_t = tf.sub(&t3x2);
        // remaining terms carry only c parameters
        for (_, s) in no_t.terms() {
            let v = s
                .substitute(crate::scalar::Var::C(0), &Scalar::zero())
                .unwrap()
                .substitute(crate::scalar::Var::C(1), &Scalar::zero())
                .unwrap();
            assert!(v.is_zero());
        }
    }

    #[test]
    fn representation_identities_hold() {
        for name in ["D3", "B2", "G3,1,1", "G3,1,2"] {
            let h = ctx(name);
            DunklRep::new(h).verify(3).unwrap();
        }
    }

    #[test]
    fn action_is_multiplicative_on_products() {
        for name in ["D3", "G3,1,2"] {
            let h = ctx(name);
            let rep = DunklRep::new(h.clone());
            let g = h.group().clone();
            let n = g.rank();
            let r = g.reflections()[0].elem;
            let elems = vec![
                h.x(0).mul(&h.y(1)).add(&h.grp(r)),
                h.y(0).mul(&h.y(1)),
                h.x(1).mul(&h.x(0)).mul(&h.y(0)).add(&h.one()),
            ];
            let polys = vec![
                XPoly::one(n),
                XPoly::var(n, 0),
                XPoly::var(n, 0).mul(&XPoly::var(n, 1)),
                XPoly::monomial(vec![2, 1]),
            ];
            for a in &elems {
                for b in &elems {
                    let ab = a.mul(b);
                    for f in &polys {
                        let via_product = rep.act_element(&ab, f).unwrap();
                        let via_composition =
                            rep.act_element(a, &rep.act_element(b, f).unwrap()).unwrap();
                        assert_eq!(via_product, via_composition, "{} homomorphism", name);
                    }
                }
            }
        }
    }

    #[test]
    fn euler_acts_with_expected_weights() {
        // on a monomial of degree d at c = 0 the Euler element acts by t*d
        let spec: GroupSpec = "D3".parse().unwrap();
        let g = Arc::new(GroupData::build(&spec).unwrap());
        let h = AlgebraContext::with_parameters(
            g.clone(),
            Scalar::t(),
            vec![Scalar::zero(); g.num_classes()],
        )
        .unwrap();
        let rep = DunklRep::new(h.clone());
        let f = XPoly::monomial(vec![2, 1]);
        let out = rep.act_element(&h.euler(), &f).unwrap();
        assert_eq!(out, f.scale(&Scalar::t().scale_int(3)));
    }
}
