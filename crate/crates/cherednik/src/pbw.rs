//! The deformed skew product algebra attached to a reflection group, in
//! PBW normal form.
//!
//! Elements are finite sums of monomials `x^a y^b w` with scalar
//! coefficients: polynomial part in the commuting `x` generators, then the
//! commuting `y` generators, then a group element. The product rewrites
//! any other arrangement into this one. The only non-trivial step moves a
//! `y` past an `x`, which costs the commutator
//!
//! `[y_j, x_k] = t d_jk - sum_s (2 c_s / <a_s, av_s>) a_s(y_j) x_k(av_s) s`
//!
//! summed over all reflections `s` with root `a_s` and coroot `av_s`;
//! every such swap lowers the filtration degree by two. Straightening
//! results are memoized per exponent pair, so repeated products stay
//! cheap.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::cyclotomic::CycNum;
use crate::error::Result;
use crate::group::GroupData;
use crate::scalar::Scalar;

/// A PBW monomial `x^a y^b w`. Exponent vectors have the group rank as
/// their length.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PBWMonomial {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub w: u16,
}

impl PBWMonomial {
    pub fn filtration(&self) -> usize {
        let da: usize = self.a.iter().map(|&e| e as usize).sum();
        let db: usize = self.b.iter().map(|&e| e as usize).sum();
        da + db
    }

    pub fn x_degree(&self) -> usize {
        self.a.iter().map(|&e| e as usize).sum()
    }

    pub fn y_degree(&self) -> usize {
        self.b.iter().map(|&e| e as usize).sum()
    }
}

/// Print order doubles as the map order: higher filtration first, then
/// reverse-lexicographic exponents, then the group index. The first key
/// of an element's term map is its leading monomial.
impl Ord for PBWMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .filtration()
            .cmp(&self.filtration())
            .then_with(|| other.a.cmp(&self.a))
            .then_with(|| other.b.cmp(&self.b))
            .then_with(|| self.w.cmp(&other.w))
    }
}

impl PartialOrd for PBWMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

type TermMap = BTreeMap<PBWMonomial, Scalar>;

/// The algebra: a group, a value for `t`, and one `c` parameter per
/// reflection class. The default context keeps all parameters symbolic.
pub struct AlgebraContext {
    group: Arc<GroupData>,
    t: Scalar,
    c: Vec<Scalar>,
    straighten_cache: Mutex<HashMap<(Vec<u8>, Vec<u8>), Arc<TermMap>>>,
}

impl AlgebraContext {
    /// Fully symbolic parameters: `t` and one `c` variable per class.
    pub fn new(group: Arc<GroupData>) -> Arc<AlgebraContext> {
        let c = (0..group.num_classes())
            .map(|k| Scalar::c(k as u8))
            .collect();
        Arc::new(AlgebraContext {
            group,
            t: Scalar::t(),
            c,
            straighten_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Explicit parameter values; `c` must have one entry per reflection
    /// class.
    pub fn with_parameters(
        group: Arc<GroupData>,
        t: Scalar,
        c: Vec<Scalar>,
    ) -> Result<Arc<AlgebraContext>> {
        if c.len() != group.num_classes() {
            return Err(crate::error::Error::UnsupportedSpec(format!(
                "expected {} class parameters, got {}",
                group.num_classes(),
                c.len()
            )));
        }
        Ok(Arc::new(AlgebraContext {
            group,
            t,
            c,
            straighten_cache: Mutex::new(HashMap::new()),
        }))
    }

    pub fn group(&self) -> &Arc<GroupData> {
        &self.group
    }

    pub fn t_param(&self) -> &Scalar {
        &self.t
    }

    pub fn c_param(&self, class: usize) -> &Scalar {
        &self.c[class]
    }

    fn rank(&self) -> usize {
        self.group.rank()
    }

    fn compatible(&self, other: &AlgebraContext) -> bool {
        std::ptr::eq(self, other)
            || (self.group.spec() == other.group.spec()
                && self.t == other.t
                && self.c == other.c)
    }

    /// The commutator `[y_j, x_k]` as (group element, coefficient) pairs.
    fn s_jk(&self, j: usize, k: usize) -> Vec<(u16, Scalar)> {
        let mut out: Vec<(u16, Scalar)> = Vec::new();
        if j == k {
            out.push((self.group.identity(), self.t.clone()));
        }
        for r in self.group.reflections() {
            let aj = &r.alpha[j];
            let avk = &r.alpha_vee[k];
            if aj.is_zero() || avk.is_zero() {
                continue;
            }
            let num = aj.mul(avk).mul(&CycNum::from_int(2));
            let ratio = num.div(&r.pairing).expect("pairing is non-zero");
            let coeff = self.c[r.class_index]
                .mul(&Scalar::from_cyc(ratio))
                .neg();
            if !coeff.is_zero() {
                out.push((r.elem, coeff));
            }
        }
        out
    }

    /// `y^b x^p` rewritten into PBW form, memoized on the exponent pair.
    fn straighten(&self, b: &[u8], p: &[u8]) -> Arc<TermMap> {
        let key = (b.to_vec(), p.to_vec());
        if let Some(hit) = self.straighten_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let n = self.rank();
        let id = self.group.identity();
        let mut out: TermMap = BTreeMap::new();
        let add_term = |map: &mut TermMap, mono: PBWMonomial, s: Scalar| {
            if s.is_zero() {
                return;
            }
            match map.get_mut(&mono) {
                Some(slot) => {
                    let v = slot.add(&s);
                    if v.is_zero() {
                        map.remove(&mono);
                    } else {
                        *slot = v;
                    }
                }
                None => {
                    map.insert(mono, s);
                }
            }
        };
        let b_total: usize = b.iter().map(|&e| e as usize).sum();
        if b_total == 0 {
            add_term(
                &mut out,
                PBWMonomial { a: p.to_vec(), b: vec![0; n], w: id },
                Scalar::one(),
            );
        } else {
            let j = b.iter().position(|&e| e > 0).unwrap();
            let p_total: usize = p.iter().map(|&e| e as usize).sum();
            if b_total == 1 {
                if p_total == 0 {
                    let mut bb = vec![0u8; n];
                    bb[j] = 1;
                    add_term(
                        &mut out,
                        PBWMonomial { a: vec![0; n], b: bb, w: id },
                        Scalar::one(),
                    );
                } else {
                    // y_j x^p = x_k (y_j x^(p - e_k)) + S_jk x^(p - e_k)
                    let k = p.iter().position(|&e| e > 0).unwrap();
                    let mut p_rest = p.to_vec();
                    p_rest[k] -= 1;
                    let inner = self.straighten(b, &p_rest);
                    for (mono, s) in inner.iter() {
                        let mut a2 = mono.a.clone();
                        a2[k] += 1;
                        add_term(
                            &mut out,
                            PBWMonomial { a: a2, b: mono.b.clone(), w: mono.w },
                            s.clone(),
                        );
                    }
                    for (u, coeff) in self.s_jk(j, k) {
                        if u == id {
                            add_term(
                                &mut out,
                                PBWMonomial { a: p_rest.clone(), b: vec![0; n], w: id },
                                coeff,
                            );
                        } else {
                            // u x^(p-e_k) = (u . x^(p-e_k)) u
                            for (a2, gamma) in self.conj_x_power(u, &p_rest) {
                                add_term(
                                    &mut out,
                                    PBWMonomial { a: a2, b: vec![0; n], w: u },
                                    coeff.mul(&Scalar::from_cyc(gamma)),
                                );
                            }
                        }
                    }
                }
            } else {
                // peel one y factor: y^b x^p = y^(b - e_j) (y_j x^p)
                let mut b_rest = b.to_vec();
                b_rest[j] -= 1;
                let mut e_j = vec![0u8; n];
                e_j[j] = 1;
                let moved = self.straighten(&e_j, p);
                for (m1, s1) in moved.iter() {
                    // m1 = x^P y^Q u with Q in {0, e_j}
                    let inner = self.straighten(&b_rest, &m1.a);
                    for (m2, s2) in inner.iter() {
                        // m2 = x^P2 y^Q2 v; append v y^Q u on the right
                        let coeff = s1.mul(s2);
                        if m1.b.iter().all(|&e| e == 0) {
                            let w = self.group.mul(m2.w, m1.w);
                            add_term(
                                &mut out,
                                PBWMonomial { a: m2.a.clone(), b: m2.b.clone(), w },
                                coeff,
                            );
                        } else {
                            let jj = m1.b.iter().position(|&e| e > 0).unwrap();
                            // v y_jj = (v . y_jj) v
                            for (i, gamma) in self.group.y_action(m2.w, jj) {
                                let mut b2 = m2.b.clone();
                                b2[i] += 1;
                                let w = self.group.mul(m2.w, m1.w);
                                add_term(
                                    &mut out,
                                    PBWMonomial { a: m2.a.clone(), b: b2, w },
                                    coeff.mul(&Scalar::from_cyc(gamma)),
                                );
                            }
                        }
                    }
                }
            }
        }
        let arc = Arc::new(out);
        self.straighten_cache
            .lock()
            .unwrap()
            .insert(key, arc.clone());
        arc
    }

    /// Expansion of `w . x^p` as exponent-vector / coefficient pairs.
    fn conj_x_power(&self, w: u16, p: &[u8]) -> Vec<(Vec<u8>, CycNum)> {
        let n = self.rank();
        let mut acc: HashMap<Vec<u8>, CycNum> = HashMap::new();
        acc.insert(vec![0u8; n], CycNum::one());
        for k in 0..n {
            let image = self.group.x_action(w, k);
            for _ in 0..p[k] {
                let mut next: HashMap<Vec<u8>, CycNum> = HashMap::new();
                for (expv, coeff) in &acc {
                    for (j, gamma) in &image {
                        let mut e2 = expv.clone();
                        e2[*j] += 1;
                        let add = coeff.mul(gamma);
                        next.entry(e2)
                            .and_modify(|c| *c = c.add(&add))
                            .or_insert(add);
                    }
                }
                acc = next;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Expansion of `w . y^q`.
    fn conj_y_power(&self, w: u16, q: &[u8]) -> Vec<(Vec<u8>, CycNum)> {
        let n = self.rank();
        let mut acc: HashMap<Vec<u8>, CycNum> = HashMap::new();
        acc.insert(vec![0u8; n], CycNum::one());
        for j in 0..n {
            let image = self.group.y_action(w, j);
            for _ in 0..q[j] {
                let mut next: HashMap<Vec<u8>, CycNum> = HashMap::new();
                for (expv, coeff) in &acc {
                    for (i, gamma) in &image {
                        let mut e2 = expv.clone();
                        e2[*i] += 1;
                        let add = coeff.mul(gamma);
                        next.entry(e2)
                            .and_modify(|c| *c = c.add(&add))
                            .or_insert(add);
                    }
                }
                acc = next;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Element constructors live on the shared context handle so every
/// element can hold a reference back to its algebra.
pub trait ContextElements {
    fn zero(&self) -> PBWElement;
    fn one(&self) -> PBWElement;
    fn scalar(&self, s: Scalar) -> PBWElement;
    fn x(&self, i: usize) -> PBWElement;
    fn y(&self, i: usize) -> PBWElement;
    fn grp(&self, w: u16) -> PBWElement;
    fn monomial(&self, a: Vec<u8>, b: Vec<u8>, w: u16) -> PBWElement;
    fn commutator_defect(&self, j: usize, k: usize) -> PBWElement;
    fn euler(&self) -> PBWElement;
}

impl ContextElements for Arc<AlgebraContext> {
    fn zero(&self) -> PBWElement {
        PBWElement { ctx: self.clone(), terms: BTreeMap::new() }
    }

    fn one(&self) -> PBWElement {
        self.scalar(Scalar::one())
    }

    fn scalar(&self, s: Scalar) -> PBWElement {
        let n = self.rank();
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(
                PBWMonomial { a: vec![0; n], b: vec![0; n], w: self.group.identity() },
                s,
            );
        }
        PBWElement { ctx: self.clone(), terms }
    }

    fn x(&self, i: usize) -> PBWElement {
        let n = self.rank();
        assert!(i < n, "x index out of range");
        let mut a = vec![0u8; n];
        a[i] = 1;
        self.monomial(a, vec![0; n], self.group.identity())
    }

    fn y(&self, i: usize) -> PBWElement {
        let n = self.rank();
        assert!(i < n, "y index out of range");
        let mut b = vec![0u8; n];
        b[i] = 1;
        self.monomial(vec![0; n], b, self.group.identity())
    }

    fn grp(&self, w: u16) -> PBWElement {
        let n = self.rank();
        self.monomial(vec![0; n], vec![0; n], w)
    }

    fn monomial(&self, a: Vec<u8>, b: Vec<u8>, w: u16) -> PBWElement {
        assert_eq!(a.len(), self.rank());
        assert_eq!(b.len(), self.rank());
        let mut terms = BTreeMap::new();
        terms.insert(PBWMonomial { a, b, w }, Scalar::one());
        PBWElement { ctx: self.clone(), terms }
    }

    /// `[y_j, x_k]` as an element: `t d_jk` minus the reflection terms.
    fn commutator_defect(&self, j: usize, k: usize) -> PBWElement {
        let n = self.rank();
        let mut e = self.zero();
        for (u, coeff) in self.s_jk(j, k) {
            e.add_assign_term(
                PBWMonomial { a: vec![0; n], b: vec![0; n], w: u },
                coeff,
            );
        }
        e
    }

    /// The deformed Euler element: `sum_i x_i y_i` plus a group-algebra
    /// correction per reflection. Satisfies `[eu, x] = t x`,
    /// `[eu, y] = -t y` and `[eu, w] = 0`.
    fn euler(&self) -> PBWElement {
        let n = self.rank();
        let mut e = self.zero();
        for i in 0..n {
            let mut a = vec![0u8; n];
            let mut b = vec![0u8; n];
            a[i] = 1;
            b[i] = 1;
            e.add_assign_term(
                PBWMonomial { a, b, w: self.group.identity() },
                Scalar::one(),
            );
        }
        for r in self.group.reflections() {
            // coefficient 2 c_s / (1 - dual eigenvalue)
            let denom = CycNum::one().sub(&r.eig_dual);
            let ratio = CycNum::from_int(2)
                .div(&denom)
                .expect("dual eigenvalue is not 1");
            let coeff = self.c_param(r.class_index)
                .mul(&Scalar::from_cyc(ratio))
                .neg();
            e.add_assign_term(
                PBWMonomial { a: vec![0; n], b: vec![0; n], w: r.elem },
                coeff,
            );
        }
        e
    }
}

/// An element of the algebra: a linear combination of PBW monomials.
#[derive(Clone)]
pub struct PBWElement {
    ctx: Arc<AlgebraContext>,
    terms: TermMap,
}

impl PBWElement {
    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &PBWMonomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest filtration degree among the terms; zero for the zero
    /// element.
    pub fn filtration(&self) -> usize {
        self.terms.keys().map(|m| m.filtration()).max().unwrap_or(0)
    }

    fn add_assign_term(&mut self, mono: PBWMonomial, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(slot) => {
                let v = slot.add(&s);
                if v.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(mono, s);
            }
        }
    }

    pub fn add(&self, other: &PBWElement) -> PBWElement {
        assert!(self.ctx.compatible(&other.ctx), "mixed algebra contexts");
        let mut out = self.clone();
        for (m, s) in &other.terms {
            out.add_assign_term(m.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, other: &PBWElement) -> PBWElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PBWElement {
        PBWElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, s)| (m.clone(), s.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> PBWElement {
        if s.is_zero() {
            return PBWElement { ctx: self.ctx.clone(), terms: BTreeMap::new() };
        }
        PBWElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul(s)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &PBWElement) -> PBWElement {
        assert!(self.ctx.compatible(&other.ctx), "mixed algebra contexts");
        let ctx = &self.ctx;
        let n = ctx.rank();
        let mut out = ctx.zero();
        for (ma, sa) in &self.terms {
            for (mb, sb) in &other.terms {
                let coeff0 = sa.mul(sb);
                if coeff0.is_zero() {
                    continue;
                }
                // (x^a y^b w)(x^a' y^b' w') =
                //   sum x^a (y^b x^P) y^Q (w w') over the expansion of
                //   w . (x^a' y^b').
                let w_out = ctx.group.mul(ma.w, mb.w);
                let xs = ctx.conj_x_power(ma.w, &mb.a);
                let ys = ctx.conj_y_power(ma.w, &mb.b);
                for (p_exp, cx) in &xs {
                    let straightened = ctx.straighten(&ma.b, p_exp);
                    for (cy_exp, cy) in &ys {
                        let gamma = coeff0.mul(&Scalar::from_cyc(cx.mul(cy)));
                        if gamma.is_zero() {
                            continue;
                        }
                        for (sm, sc) in straightened.iter() {
                            // sm = x^P2 y^Q2 v; attach x^a on the left and
                            // y^Q (w w') on the right.
                            let mut a2 = sm.a.clone();
                            for i in 0..n {
                                a2[i] += ma.a[i];
                            }
                            let coeff = gamma.mul(sc);
                            if sm.w == ctx.group.identity() {
                                let mut b2 = sm.b.clone();
                                for i in 0..n {
                                    b2[i] += cy_exp[i];
                                }
                                out.add_assign_term(
                                    PBWMonomial { a: a2, b: b2, w: w_out },
                                    coeff,
                                );
                            } else {
                                // v y^Q = (v . y^Q) v
                                for (q2, cv) in ctx.conj_y_power(sm.w, cy_exp) {
                                    let mut b2 = sm.b.clone();
                                    for i in 0..n {
                                        b2[i] += q2[i];
                                    }
                                    let w_full = ctx.group.mul(sm.w, w_out);
                                    out.add_assign_term(
                                        PBWMonomial { a: a2.clone(), b: b2, w: w_full },
                                        coeff.mul(&Scalar::from_cyc(cv)),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &PBWElement) -> PBWElement {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: u32) -> PBWElement {
        let mut out = self.ctx.one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

impl PartialEq for PBWElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx) && self.terms == other.terms
    }
}

impl fmt::Display for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, s) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.a.iter().enumerate() {
                if e == 1 {
                    factors.push(format!("x{}", i + 1));
                } else if e > 1 {
                    factors.push(format!("x{}^{}", i + 1, e));
                }
            }
            for (i, &e) in m.b.iter().enumerate() {
                if e == 1 {
                    factors.push(format!("y{}", i + 1));
                } else if e > 1 {
                    factors.push(format!("y{}^{}", i + 1, e));
                }
            }
            if m.w != self.ctx.group.identity() {
                factors.push(format!("w[{}]", self.ctx.group.name(m.w)));
            }
            let coeff_str = format!("{}", s);
            let negated = s.neg();
            let neg_str = format!("{}", negated);
            // Fold a pure leading minus into the join when the negated
            // form is strictly simpler.
            let (sign_neg, mag) = if coeff_str.starts_with('-') && !neg_str.starts_with('-') {
                (true, neg_str)
            } else {
                (false, coeff_str)
            };
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let wrap = mag.contains(" + ") || mag.contains(" - ");
            if factors.is_empty() {
                if wrap {
                    write!(f, "({})", mag)?;
                } else {
                    write!(f, "{}", mag)?;
                }
            } else {
                let body = factors.join("*");
                if mag == "1" {
                    write!(f, "{}", body)?;
                } else if wrap {
                    write!(f, "({})*{}", mag, body)?;
                } else {
                    write!(f, "{}*{}", mag, body)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn ctx(name: &str) -> Arc<AlgebraContext> {
        let spec: GroupSpec = name.parse().unwrap();
        AlgebraContext::new(Arc::new(GroupData::build(&spec).unwrap()))
    }

    fn ctx_at_zero(name: &str) -> Arc<AlgebraContext> {
        let spec: GroupSpec = name.parse().unwrap();
        let g = Arc::new(GroupData::build(&spec).unwrap());
        let c = vec![Scalar::zero(); g.num_classes()];
        AlgebraContext::with_parameters(g, Scalar::zero(), c).unwrap()
    }

    #[test]
    fn defining_commutators_match_defect() {
        for name in ["D3", "B2", "G3,1,2"] {
            let h = ctx(name);
            let n = h.group().rank();
            for j in 0..n {
                for k in 0..n {
                    let lhs = h.y(j).mul(&h.x(k)).sub(&h.x(k).mul(&h.y(j)));
                    let rhs = h.commutator_defect(j, k);
                    assert_eq!(lhs, rhs, "{} [y{},x{}]", name, j + 1, k + 1);
                }
            }
        }
    }

    #[test]
    fn dihedral_defect_oracle() {
        // for the triangle group: [y2, x2] = t - 2c s1 - (1/2)c s2 - (1/2)c s3
        let h = ctx("D3");
        let g = h.group().clone();
        let d = h.commutator_defect(1, 1);
        let mut expect = h.scalar(Scalar::t());
        let c = Scalar::c(0);
        expect = expect.sub(&h.grp(g.by_name("s1").unwrap()).scale(&c.scale_int(2)));
        expect = expect.sub(&h.grp(g.by_name("s2").unwrap()).scale(&c.mul(&Scalar::from_frac(1, 2))));
        expect = expect.sub(&h.grp(g.by_name("s3").unwrap()).scale(&c.mul(&Scalar::from_frac(1, 2))));
        assert_eq!(d, expect);
    }

    #[test]
    fn defect_is_symmetric_for_real_groups() {
        for name in ["D3", "D4", "B2"] {
            let h = ctx(name);
            let n = h.group().rank();
            for j in 0..n {
                for k in 0..n {
                    assert_eq!(
                        h.commutator_defect(j, k),
                        h.commutator_defect(k, j),
                        "{} S[{},{}]",
                        name,
                        j,
                        k
                    );
                }
            }
        }
    }

    #[test]
    fn group_relations_inside_algebra() {
        let h = ctx("G3,1,2");
        let g = h.group().clone();
        for w in 0..g.order() as u16 {
            for v in 0..g.order() as u16 {
                assert_eq!(h.grp(w).mul(&h.grp(v)), h.grp(g.mul(w, v)));
            }
        }
        // w x_k w^{-1} equals the matrix action on the dual basis
        for w in 0..g.order() as u16 {
            for k in 0..g.rank() {
                let lhs = h.grp(w).mul(&h.x(k)).mul(&h.grp(g.inv(w)));
                let mut rhs = h.zero();
                for (j, coeff) in g.x_action(w, k) {
                    rhs = rhs.add(&h.x(j).scale(&Scalar::from_cyc(coeff)));
                }
                assert_eq!(lhs, rhs, "conjugation of x{} by {}", k + 1, g.name(w));
            }
        }
    }

    #[test]
    fn euler_element_relations() {
        for name in ["D3", "B2", "G3,1,1", "G3,1,2"] {
            let h = ctx(name);
            let g = h.group().clone();
            let eu = h.euler();
            let t = Scalar::t();
            for i in 0..g.rank() {
                let cx = eu.commutator(&h.x(i));
                assert_eq!(cx, h.x(i).scale(&t), "{} [eu,x{}]", name, i + 1);
                let cy = eu.commutator(&h.y(i));
                assert_eq!(cy, h.y(i).scale(&t.neg()), "{} [eu,y{}]", name, i + 1);
            }
            for w in 0..g.order() as u16 {
                assert!(eu.commutator(&h.grp(w)).is_zero(), "{} [eu,{}]", name, g.name(w));
            }
        }
    }

    #[test]
    fn associativity_on_mixed_triples() {
        for name in ["D3", "G3,1,2"] {
            let h = ctx(name);
            let g = h.group().clone();
            let s_elem = g.reflections()[0].elem;
            let atoms = vec![
                h.x(0).add(&h.y(1)),
                h.y(0).mul(&h.x(1)).add(&h.one()),
                h.grp(s_elem).add(&h.x(1).scale(&Scalar::c(0))),
            ];
            for a in &atoms {
                for b in &atoms {
                    for c in &atoms {
                        let left = a.mul(b).mul(c);
                        let right = a.mul(&b.mul(c));
                        assert_eq!(left, right, "{} associativity", name);
                    }
                }
            }
        }
    }

    #[test]
    fn product_filtration_is_subadditive() {
        let h = ctx("B2");
        let e1 = h.x(0).mul(&h.y(0)).mul(&h.x(1));
        let e2 = h.y(1).mul(&h.y(0)).mul(&h.x(0));
        let p = e1.mul(&e2);
        assert!(p.filtration() <= e1.filtration() + e2.filtration());
        assert_eq!(e1.filtration(), 3);
    }

    /// Independent model of the undeformed algebra: the group acting on
    /// a commutative polynomial ring in the x and y variables. Implemented
    /// from scratch on purpose, straight from the matrix action.
    mod skew_oracle {
        use super::*;
        use std::collections::BTreeMap;

        pub type SkewElem = BTreeMap<(Vec<u8>, Vec<u8>, u16), CycNum>;

        pub fn monomial(a: Vec<u8>, b: Vec<u8>, w: u16) -> SkewElem {
            let mut m = BTreeMap::new();
            m.insert((a, b, w), CycNum::one());
            m
        }

        fn add_to(acc: &mut SkewElem, key: (Vec<u8>, Vec<u8>, u16), v: CycNum) {
            let cur = acc.remove(&key).unwrap_or_else(CycNum::zero).add(&v);
            if !cur.is_zero() {
                acc.insert(key, cur);
            }
        }

        /// Expand w . (x^a y^b) by brute force over all variable factors.
        fn conj(g: &GroupData, w: u16, a: &[u8], b: &[u8]) -> Vec<(Vec<u8>, Vec<u8>, CycNum)> {
            let n = g.rank();
            let mut acc: Vec<(Vec<u8>, Vec<u8>, CycNum)> =
                vec![(vec![0; n], vec![0; n], CycNum::one())];
            for k in 0..n {
                for _ in 0..a[k] {
                    let mut next = Vec::new();
                    for (ea, eb, c) in &acc {
                        for (j, gamma) in g.x_action(w, k) {
                            let mut e2 = ea.clone();
                            e2[j] += 1;
                            next.push((e2, eb.clone(), c.mul(&gamma)));
                        }
                    }
                    acc = next;
                }
            }
            for k in 0..n {
                for _ in 0..b[k] {
                    let mut next = Vec::new();
                    for (ea, eb, c) in &acc {
                        for (j, gamma) in g.y_action(w, k) {
                            let mut e2 = eb.clone();
                            e2[j] += 1;
                            next.push((ea.clone(), e2, c.mul(&gamma)));
                        }
                    }
                    acc = next;
                }
            }
            acc
        }

        pub fn mul(g: &GroupData, p: &SkewElem, q: &SkewElem) -> SkewElem {
            let n = g.rank();
            let mut out = SkewElem::new();
            for ((a1, b1, w1), c1) in p {
                for ((a2, b2, w2), c2) in q {
                    for (ea, eb, gamma) in conj(g, *w1, a2, b2) {
                        let mut a = a1.clone();
                        let mut b = b1.clone();
                        for i in 0..n {
                            a[i] += ea[i];
                            b[i] += eb[i];
                        }
                        add_to(
                            &mut out,
                            (a, b, g.mul(*w1, *w2)),
                            c1.mul(c2).mul(&gamma),
                        );
                    }
                }
            }
            out
        }
    }

    #[test]
    fn undeformed_product_matches_skew_oracle() {
        for name in ["D3", "G3,1,2"] {
            let h = ctx_at_zero(name);
            let g = h.group().clone();
            let n = g.rank();
            let r = g.reflections()[1].elem;
            let samples: Vec<(Vec<u8>, Vec<u8>, u16)> = vec![
                (vec![1, 0], vec![0, 1], r),
                (vec![0, 2], vec![1, 0], g.identity()),
                (vec![1, 1], vec![1, 1], g.inv(r)),
                (vec![0, 0], vec![2, 1], r),
            ];
            for (a1, b1, w1) in &samples {
                for (a2, b2, w2) in &samples {
                    let lhs = h
                        .monomial(a1.clone(), b1.clone(), *w1)
                        .mul(&h.monomial(a2.clone(), b2.clone(), *w2));
                    let oracle = skew_oracle::mul(
                        &g,
                        &skew_oracle::monomial(a1.clone(), b1.clone(), *w1),
                        &skew_oracle::monomial(a2.clone(), b2.clone(), *w2),
                    );
                    // compare term by term
                    assert_eq!(lhs.num_terms(), oracle.len());
                    for ((a, b, w), c) in &oracle {
                        let mono = PBWMonomial { a: a.clone(), b: b.clone(), w: *w };
                        assert_eq!(
                            lhs.coefficient(&mono),
                            Scalar::from_cyc(c.clone()),
                            "{} mono {:?}",
                            name,
                            mono
                        );
                    }
                    let _ = n;
                }
            }
        }
    }

    #[test]
    fn display_and_leading_term() {
        let h = ctx("D3");
        let e = h.x(0).mul(&h.y(1)).add(&h.grp(h.group().by_name("r1").unwrap()));
        let s = format!("{}", e);
        assert_eq!(s, "x1*y2 + w[r1]");
        let first = e.terms().next().unwrap().0.clone();
        assert_eq!(first.filtration(), 2, "leading term comes first");
    }
}
