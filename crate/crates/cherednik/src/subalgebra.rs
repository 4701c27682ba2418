//! The two distinguished subalgebras generated over the group algebra by
//! quadratic elements: the matrix-type generators `E[i,j] = x_i y_j` and,
//! for real orthogonal groups, the antisymmetric generators
//! `M[i,j] = x_i y_j - x_j y_i`.
//!
//! The module provides three independent views of each subalgebra and
//! cross-checks them against one another:
//!
//! * `GlCombo` / `SoCombo` hold formal products of generators with a group
//!   element on the right, closed under multiplication because conjugation
//!   maps generators to combinations of generators.
//! * `gl_normal_form` / `so_normal_form` rewrite any such product into the
//!   span of admissible monomials using only the bracket and exchange
//!   relations, so a successful rewrite is a machine-checked spanning
//!   proof.
//! * `gl_basis_certificate` / `so_basis_certificate` expand the admissible
//!   monomials and certify their linear independence by exact rank.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::SparseMat;
use crate::pbw::{AlgebraContext, ContextElements, PBWElement, PBWMonomial};
use crate::scalar::{Scalar, Var};

/// A product of generators held as index pairs, with a trailing group
/// element. `(i, j)` is `E[i+1,j+1]` in the matrix family and the arc
/// `M[i+1,j+1]` (stored with `i < j`) in the antisymmetric family.
type Word = Vec<(u8, u8)>;

/// Which generator family a combo lives in; fixes the conjugation rule
/// and the admissibility predicate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Family {
    Matrix,
    Antisymmetric,
}

#[derive(Clone)]
struct Combo {
    ctx: Arc<AlgebraContext>,
    family: Family,
    terms: BTreeMap<(Word, u16), Scalar>,
}

/// Formal element of the subalgebra generated by the `E[i,j]` and the
/// group.
#[derive(Clone)]
pub struct GlCombo(Combo);

/// Formal element of the subalgebra generated by the `M[i,j]` and the
/// group. Only available over real orthogonal groups.
#[derive(Clone)]
pub struct SoCombo(Combo);

fn add_term(terms: &mut BTreeMap<(Word, u16), Scalar>, key: (Word, u16), coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(slot) => {
            let s = slot.add(&coeff);
            if s.is_zero() {
                terms.remove(&key);
            } else {
                *slot = s;
            }
        }
        None => {
            terms.insert(key, coeff);
        }
    }
}

/// `S_jk = [y_j, x_k]` as group-algebra data: pairs of a group element
/// and its coefficient, including the `t` part at the identity.
fn defect_terms(ctx: &Arc<AlgebraContext>, j: usize, k: usize) -> Vec<(u16, Scalar)> {
    ctx.commutator_defect(j, k)
        .terms()
        .map(|(m, c)| (m.w, c.clone()))
        .collect()
}

/// Coupling constant `2 c_s / alpha_s(alpha_s_vee)` of one reflection.
fn coupling(ctx: &Arc<AlgebraContext>, refl: &crate::group::Reflection) -> Scalar {
    let ratio = CycNum::from_int(2)
        .div(&refl.pairing)
        .expect("reflection pairing is invertible");
    ctx.c_param(refl.class_index).mul(&Scalar::from_cyc(ratio))
}

/// `u (prod E) u^{-1}` expanded back into the matrix family: each factor
/// transforms by the actions on the two variables separately.
fn conjugate_word_matrix(ctx: &Arc<AlgebraContext>, u: u16, word: &[(u8, u8)]) -> Vec<(Word, Scalar)> {
    let g = ctx.group();
    let mut acc: Vec<(Word, Scalar)> = vec![(Vec::new(), Scalar::one())];
    for &(k, l) in word {
        let xa = g.x_action(u, k as usize);
        let ya = g.y_action(u, l as usize);
        let mut next: Vec<(Word, Scalar)> = Vec::new();
        for (w, c) in &acc {
            for (p, cx) in &xa {
                for (q, cy) in &ya {
                    let coeff = c.mul(&Scalar::from_cyc(cx.mul(cy)));
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push((*p as u8, *q as u8));
                    next.push((w2, coeff));
                }
            }
        }
        acc = next;
    }
    acc
}

/// `u (prod M) u^{-1}` expanded back into the antisymmetric family; the
/// coefficient of each target arc is a 2x2 minor of the acting matrix.
/// Valid because the group is orthogonal.
fn conjugate_word_antisym(ctx: &Arc<AlgebraContext>, u: u16, word: &[(u8, u8)]) -> Vec<(Word, Scalar)> {
    let g = ctx.group();
    let n = g.rank();
    let m = g.matrix(u);
    let mut acc: Vec<(Word, Scalar)> = vec![(Vec::new(), Scalar::one())];
    for &(k, l) in word {
        let mut next: Vec<(Word, Scalar)> = Vec::new();
        for (w, c) in &acc {
            for p in 0..n {
                for q in p + 1..n {
                    let minor = m
                        .get(p, k as usize)
                        .mul(m.get(q, l as usize))
                        .sub(&m.get(p, l as usize).mul(m.get(q, k as usize)));
                    if minor.is_zero() {
                        continue;
                    }
                    let coeff = c.mul(&Scalar::from_cyc(minor));
                    let mut w2 = w.clone();
                    w2.push((p as u8, q as u8));
                    next.push((w2, coeff));
                }
            }
        }
        acc = next;
    }
    acc
}

impl Combo {
    fn conjugate_word(&self, u: u16, word: &[(u8, u8)]) -> Vec<(Word, Scalar)> {
        match self.family {
            Family::Matrix => conjugate_word_matrix(&self.ctx, u, word),
            Family::Antisymmetric => conjugate_word_antisym(&self.ctx, u, word),
        }
    }

    fn zero(ctx: &Arc<AlgebraContext>, family: Family) -> Combo {
        Combo { ctx: ctx.clone(), family, terms: BTreeMap::new() }
    }

    fn add(&self, other: &Combo) -> Combo {
        assert_eq!(self.family, other.family);
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            add_term(&mut terms, k.clone(), v.clone());
        }
        Combo { ctx: self.ctx.clone(), family: self.family, terms }
    }

    fn scale(&self, s: &Scalar) -> Combo {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            add_term(&mut terms, k.clone(), v.mul(s));
        }
        Combo { ctx: self.ctx.clone(), family: self.family, terms }
    }

    fn neg(&self) -> Combo {
        self.scale(&Scalar::one().neg())
    }

    fn sub(&self, other: &Combo) -> Combo {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Combo) -> Combo {
        assert_eq!(self.family, other.family);
        let g = self.ctx.group();
        let mut terms = BTreeMap::new();
        for ((w1, u), c1) in &self.terms {
            for ((w2, v), c2) in &other.terms {
                let tail = g.mul(*u, *v);
                let base = c1.mul(c2);
                if *u == g.identity() || w2.is_empty() {
                    let mut word = w1.clone();
                    word.extend_from_slice(w2);
                    add_term(&mut terms, (word, tail), base);
                    continue;
                }
                for (cw, cc) in self.conjugate_word(*u, w2) {
                    let mut word = w1.clone();
                    word.extend_from_slice(&cw);
                    add_term(&mut terms, (word, tail), base.mul(&cc));
                }
            }
        }
        Combo { ctx: self.ctx.clone(), family: self.family, terms }
    }

    fn expand(&self) -> PBWElement {
        let ctx = &self.ctx;
        let mut acc = ctx.zero();
        for ((word, tail), coeff) in &self.terms {
            let mut e = expand_word(ctx, self.family, word);
            if *tail != ctx.group().identity() {
                e = e.mul(&ctx.grp(*tail));
            }
            acc = acc.add(&e.scale(coeff));
        }
        acc
    }
}

/// Expand a single generator word (no tail) through the multiplication
/// engine.
fn expand_word(ctx: &Arc<AlgebraContext>, family: Family, word: &[(u8, u8)]) -> PBWElement {
    let mut e = ctx.one();
    for &(i, j) in word {
        let f = match family {
            Family::Matrix => gl_elem(ctx, i as usize, j as usize),
            Family::Antisymmetric => so_elem(ctx, i as usize, j as usize),
        };
        e = e.mul(&f);
    }
    e
}

/// `E[i,j] = x_i y_j` as an algebra element.
pub fn gl_elem(ctx: &Arc<AlgebraContext>, i: usize, j: usize) -> PBWElement {
    ctx.x(i).mul(&ctx.y(j))
}

/// `M[i,j] = x_i y_j - x_j y_i` as an algebra element; zero when `i == j`.
pub fn so_elem(ctx: &Arc<AlgebraContext>, i: usize, j: usize) -> PBWElement {
    gl_elem(ctx, i, j).sub(&gl_elem(ctx, j, i))
}

impl GlCombo {
    pub fn zero(ctx: &Arc<AlgebraContext>) -> GlCombo {
        GlCombo(Combo::zero(ctx, Family::Matrix))
    }

    pub fn unit(ctx: &Arc<AlgebraContext>) -> GlCombo {
        GlCombo::scalar(ctx, Scalar::one())
    }

    pub fn scalar(ctx: &Arc<AlgebraContext>, s: Scalar) -> GlCombo {
        let mut c = Combo::zero(ctx, Family::Matrix);
        add_term(&mut c.terms, (Vec::new(), ctx.group().identity()), s);
        GlCombo(c)
    }

    /// The generator `E[i,j]`, zero-based indices.
    pub fn generator(ctx: &Arc<AlgebraContext>, i: usize, j: usize) -> GlCombo {
        let n = ctx.group().rank();
        assert!(i < n && j < n, "generator index out of range");
        let mut c = Combo::zero(ctx, Family::Matrix);
        add_term(
            &mut c.terms,
            (vec![(i as u8, j as u8)], ctx.group().identity()),
            Scalar::one(),
        );
        GlCombo(c)
    }

    pub fn group_elem(ctx: &Arc<AlgebraContext>, w: u16) -> GlCombo {
        let mut c = Combo::zero(ctx, Family::Matrix);
        add_term(&mut c.terms, (Vec::new(), w), Scalar::one());
        GlCombo(c)
    }

    /// The deformed Euler element written in the generators: the trace of
    /// the matrix family plus its group-algebra correction.
    pub fn euler(ctx: &Arc<AlgebraContext>) -> GlCombo {
        let n = ctx.group().rank();
        let mut acc = GlCombo::zero(ctx);
        for i in 0..n {
            acc = acc.add(&GlCombo::generator(ctx, i, i));
        }
        for r in ctx.group().reflections() {
            let denom = CycNum::one().sub(&r.eig_dual);
            let ratio = CycNum::from_int(2)
                .div(&denom)
                .expect("dual eigenvalue is not 1");
            let coeff = ctx
                .c_param(r.class_index)
                .mul(&Scalar::from_cyc(ratio))
                .neg();
            acc = acc.add(&GlCombo::group_elem(ctx, r.elem).0.scale(&coeff).into_gl());
        }
        acc
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.0.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.0.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.0.terms.len()
    }

    pub fn add(&self, other: &GlCombo) -> GlCombo {
        GlCombo(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &GlCombo) -> GlCombo {
        GlCombo(self.0.sub(&other.0))
    }

    pub fn neg(&self) -> GlCombo {
        GlCombo(self.0.neg())
    }

    pub fn scale(&self, s: &Scalar) -> GlCombo {
        GlCombo(self.0.scale(s))
    }

    pub fn mul(&self, other: &GlCombo) -> GlCombo {
        GlCombo(self.0.mul(&other.0))
    }

    /// Expand into the ambient algebra.
    pub fn expand(&self) -> PBWElement {
        self.0.expand()
    }
}

impl Combo {
    fn into_gl(self) -> GlCombo {
        GlCombo(self)
    }
}

impl SoCombo {
    pub fn zero(ctx: &Arc<AlgebraContext>) -> Result<SoCombo> {
        ensure_antisym_supported(ctx)?;
        Ok(SoCombo(Combo::zero(ctx, Family::Antisymmetric)))
    }

    pub fn unit(ctx: &Arc<AlgebraContext>) -> Result<SoCombo> {
        SoCombo::scalar(ctx, Scalar::one())
    }

    pub fn scalar(ctx: &Arc<AlgebraContext>, s: Scalar) -> Result<SoCombo> {
        ensure_antisym_supported(ctx)?;
        let mut c = Combo::zero(ctx, Family::Antisymmetric);
        add_term(&mut c.terms, (Vec::new(), ctx.group().identity()), s);
        Ok(SoCombo(c))
    }

    /// The generator `M[i,j]`, zero-based; the pair is normalized so the
    /// stored arc is ascending, and `M[i,i]` is zero.
    pub fn generator(ctx: &Arc<AlgebraContext>, i: usize, j: usize) -> Result<SoCombo> {
        ensure_antisym_supported(ctx)?;
        let n = ctx.group().rank();
        assert!(i < n && j < n, "generator index out of range");
        let mut c = Combo::zero(ctx, Family::Antisymmetric);
        if let Some(((p, q), sign)) = arc(i as u8, j as u8) {
            add_term(
                &mut c.terms,
                (vec![(p, q)], ctx.group().identity()),
                Scalar::from_int(sign),
            );
        }
        Ok(SoCombo(c))
    }

    pub fn group_elem(ctx: &Arc<AlgebraContext>, w: u16) -> Result<SoCombo> {
        ensure_antisym_supported(ctx)?;
        let mut c = Combo::zero(ctx, Family::Antisymmetric);
        add_term(&mut c.terms, (Vec::new(), w), Scalar::one());
        Ok(SoCombo(c))
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.0.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.0.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.0.terms.len()
    }

    pub fn add(&self, other: &SoCombo) -> SoCombo {
        SoCombo(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &SoCombo) -> SoCombo {
        SoCombo(self.0.sub(&other.0))
    }

    pub fn neg(&self) -> SoCombo {
        SoCombo(self.0.neg())
    }

    pub fn scale(&self, s: &Scalar) -> SoCombo {
        SoCombo(self.0.scale(s))
    }

    pub fn mul(&self, other: &SoCombo) -> SoCombo {
        SoCombo(self.0.mul(&other.0))
    }

    pub fn expand(&self) -> PBWElement {
        self.0.expand()
    }
}

/// Normalize an index pair to an ascending arc with a sign; `None` for a
/// degenerate pair.
fn arc(p: u8, q: u8) -> Option<((u8, u8), i64)> {
    use std::cmp::Ordering::*;
    match p.cmp(&q) {
        Equal => None,
        Less => Some(((p, q), 1)),
        Greater => Some(((q, p), -1)),
    }
}

/// The antisymmetric family needs a real group acting by orthogonal
/// matrices, so that conjugation preserves the span of the `M[i,j]`.
fn ensure_antisym_supported(ctx: &Arc<AlgebraContext>) -> Result<()> {
    let g = ctx.group();
    if !g.is_real() {
        return Err(Error::NotRealGroup);
    }
    let n = g.rank();
    for w in 0..g.order() as u16 {
        let m = g.matrix(w);
        let mi = g.matrix(g.inv(w));
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j) != mi.get(j, i) {
                    return Err(Error::ConstructionInvariantViolated(format!(
                        "element {} does not act orthogonally",
                        g.name(w)
                    )));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// admissible monomials

/// Admissible matrix-family words of a given length: both coordinate
/// words weakly increase, which pairs the sorted multiset of first
/// indices with the sorted multiset of second indices position by
/// position.
pub fn gl_admissible_words(n: usize, len: usize) -> Vec<Word> {
    let firsts = weak_words(n, len);
    let seconds = weak_words(n, len);
    let mut out = Vec::new();
    for a in &firsts {
        for b in &seconds {
            let word: Word = a.iter().cloned().zip(b.iter().cloned()).collect();
            out.push(word);
        }
    }
    out
}

fn weak_words(n: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, len: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v as u8);
            rec(n, len, v, cur, out);
            cur.pop();
        }
    }
    rec(n, len, 0, &mut cur, &mut out);
    out
}

fn gl_word_admissible(word: &[(u8, u8)]) -> bool {
    word.windows(2)
        .all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1)
}

/// Count of admissible matrix-family words by the closed formula: weakly
/// increasing words are multisets, chosen independently for each
/// coordinate.
pub fn gl_count_formula(n: usize, len: usize) -> usize {
    let ms = binomial(len + n - 1, n - 1);
    ms * ms
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Two arcs cross when they interleave strictly.
fn arcs_cross(a: (u8, u8), b: (u8, u8)) -> bool {
    let (p, q) = a;
    let (r, t) = b;
    (p < r && r < q && q < t) || (r < p && p < t && t < q)
}

fn multiset_noncrossing(word: &[(u8, u8)]) -> bool {
    for s in 0..word.len() {
        for sp in s + 1..word.len() {
            if arcs_cross(word[s], word[sp]) {
                return false;
            }
        }
    }
    true
}

fn so_word_admissible(word: &[(u8, u8)]) -> bool {
    word.windows(2).all(|w| w[0] <= w[1]) && multiset_noncrossing(word)
}

/// Admissible antisymmetric-family words: lexicographically sorted arc
/// multisets with no crossing pair.
pub fn so_admissible_words(n: usize, len: usize) -> Vec<Word> {
    let mut arcs: Vec<(u8, u8)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            arcs.push((i as u8, j as u8));
        }
    }
    let mut out = Vec::new();
    let mut cur: Word = Vec::new();
    fn rec(arcs: &[(u8, u8)], len: usize, start: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == len {
            if multiset_noncrossing(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for k in start..arcs.len() {
            cur.push(arcs[k]);
            rec(arcs, len, k, cur, out);
            cur.pop();
        }
    }
    rec(&arcs, len, 0, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// rewriting normal forms

/// Replacement for a two-generator product: each entry is a generator
/// word, a group element to slide to the right, and a coefficient.
type Replacement = Vec<(Word, u16, Scalar)>;

/// The bracket `[E_ij, E_kl]`, transcribed term by term.
fn gl_bracket_terms(ctx: &Arc<AlgebraContext>, i: u8, j: u8, k: u8, l: u8) -> Replacement {
    let g = ctx.group();
    let id = g.identity();
    let t = ctx.t_param().clone();
    let mut out: Replacement = Vec::new();
    if j == k {
        out.push((vec![(i, l)], id, t.clone()));
    }
    if i == l {
        out.push((vec![(k, j)], id, t.neg()));
    }
    let n = g.rank();
    for r in g.reflections() {
        let gamma = coupling(ctx, r);
        let a_yj = &r.alpha[j as usize];
        let a_yl = &r.alpha[l as usize];
        let av_xi = &r.alpha_vee[i as usize];
        let av_xk = &r.alpha_vee[k as usize];
        let c1 = gamma.mul(&Scalar::from_cyc(a_yl.mul(av_xi)));
        if !c1.is_zero() {
            out.push((vec![(k, j)], r.elem, c1));
        }
        let c2 = gamma.mul(&Scalar::from_cyc(a_yj.mul(av_xk))).neg();
        if !c2.is_zero() {
            out.push((vec![(i, l)], r.elem, c2));
        }
        let pref = gamma.mul(&Scalar::from_cyc(a_yj.mul(a_yl)));
        if pref.is_zero() {
            continue;
        }
        for rr in 0..n {
            let av_r = &r.alpha_vee[rr];
            if av_r.is_zero() {
                continue;
            }
            let c3 = pref.mul(&Scalar::from_cyc(av_r.mul(av_xk)));
            if !c3.is_zero() {
                out.push((vec![(i, rr as u8)], r.elem, c3));
            }
            let c4 = pref.mul(&Scalar::from_cyc(av_r.mul(av_xi))).neg();
            if !c4.is_zero() {
                out.push((vec![(k, rr as u8)], r.elem, c4));
            }
        }
    }
    out
}

/// Rewrite `E_ij E_kl` using the exchange relation: the main term swaps
/// the second indices, the rest lowers the generator degree.
fn gl_exchange_replacement(ctx: &Arc<AlgebraContext>, i: u8, j: u8, k: u8, l: u8) -> Replacement {
    let g = ctx.group();
    let id = g.identity();
    let t = ctx.t_param().clone();
    let mut out: Replacement = vec![(vec![(i, l), (k, j)], id, Scalar::one())];
    if j == k {
        out.push((vec![(i, l)], id, t.clone()));
    }
    if l == k {
        out.push((vec![(i, j)], id, t.neg()));
    }
    for r in g.reflections() {
        let base = coupling(ctx, r).mul(&Scalar::from_cyc(r.alpha_vee[k as usize].clone()));
        if base.is_zero() {
            continue;
        }
        let c1 = base.mul(&Scalar::from_cyc(r.alpha[l as usize].clone()));
        if !c1.is_zero() {
            out.push((vec![(i, j)], r.elem, c1));
        }
        let c2 = base.mul(&Scalar::from_cyc(r.alpha[j as usize].clone())).neg();
        if !c2.is_zero() {
            out.push((vec![(i, l)], r.elem, c2));
        }
    }
    out
}

/// Rewrite `E_ij E_kl` as `E_kl E_ij` plus the bracket.
fn gl_swap_replacement(ctx: &Arc<AlgebraContext>, i: u8, j: u8, k: u8, l: u8) -> Replacement {
    let mut out: Replacement = vec![(vec![(k, l), (i, j)], ctx.group().identity(), Scalar::one())];
    out.extend(gl_bracket_terms(ctx, i, j, k, l));
    out
}

/// The bracket `[M_ij, M_kl]` in terms of single arcs times defects.
fn so_bracket_terms(ctx: &Arc<AlgebraContext>, i: u8, j: u8, k: u8, l: u8) -> Replacement {
    let mut out: Replacement = Vec::new();
    let pieces: [(u8, u8, u8, u8, i64); 4] = [
        (i, l, j, k, 1),
        (j, k, i, l, 1),
        (i, k, j, l, -1),
        (j, l, i, k, -1),
    ];
    for (p, q, a, b, sgn) in pieces {
        if let Some(((u, v), asgn)) = arc(p, q) {
            for (w, sc) in defect_terms(ctx, a as usize, b as usize) {
                out.push((vec![(u, v)], w, sc.scale_int(sgn * asgn)));
            }
        }
    }
    out
}

fn so_swap_replacement(ctx: &Arc<AlgebraContext>, i: u8, j: u8, k: u8, l: u8) -> Replacement {
    let mut out: Replacement = vec![(vec![(k, l), (i, j)], ctx.group().identity(), Scalar::one())];
    out.extend(so_bracket_terms(ctx, i, j, k, l));
    out
}

/// Resolve a crossing `M_ij M_kl` with `i < k < j < l` into the nested
/// and disjoint pairs plus degree-one corrections.
fn so_cross_replacement(ctx: &Arc<AlgebraContext>, i: u8, j: u8, k: u8, l: u8) -> Replacement {
    debug_assert!(i < k && k < j && j < l);
    let id = ctx.group().identity();
    let mut out: Replacement = vec![
        (vec![(k, j), (i, l)], id, Scalar::one()),
        (vec![(i, k), (j, l)], id, Scalar::one()),
    ];
    for (w, sc) in defect_terms(ctx, k as usize, l as usize) {
        out.push((vec![(i, j)], w, sc));
    }
    for (w, sc) in defect_terms(ctx, i as usize, l as usize) {
        out.push((vec![(k, j)], w, sc.neg()));
    }
    for (w, sc) in defect_terms(ctx, j as usize, l as usize) {
        out.push((vec![(i, k)], w, sc.neg()));
    }
    out
}

enum Step {
    /// Apply a bracket swap at this position.
    Swap(usize),
    /// Apply the matrix-family exchange relation at this position.
    Exchange(usize),
    /// Resolve a crossing between this position and the next.
    Cross(usize),
}

fn next_gl_step(word: &[(u8, u8)]) -> Option<Step> {
    for pos in 0..word.len().saturating_sub(1) {
        let (a, b) = word[pos];
        let (c, d) = word[pos + 1];
        if (c, d) < (a, b) {
            return Some(Step::Swap(pos));
        }
        if a < c && b > d {
            return Some(Step::Exchange(pos));
        }
    }
    None
}

fn next_so_step(word: &[(u8, u8)]) -> Option<Step> {
    // crossings first; bracket swaps preserve the arc multiset, so
    // sorting can never reintroduce one
    for s in 0..word.len() {
        for sp in s + 1..word.len() {
            if arcs_cross(word[s], word[sp]) {
                if sp == s + 1 {
                    if word[s].0 < word[sp].0 {
                        return Some(Step::Cross(s));
                    }
                    return Some(Step::Swap(s));
                }
                // walk the right arc leftwards until the pair is adjacent
                return Some(Step::Swap(sp - 1));
            }
        }
    }
    for pos in 0..word.len().saturating_sub(1) {
        if word[pos + 1] < word[pos] {
            return Some(Step::Swap(pos));
        }
    }
    None
}

/// Shared rewriting loop. Every step replaces one adjacent generator
/// pair through a defining relation, conjugating the suffix past any
/// group element the relation produces.
fn rewrite(combo: &Combo, fuel_budget: usize) -> Result<Combo> {
    let ctx = &combo.ctx;
    let g = ctx.group();
    let mut fuel = fuel_budget;
    let mut out = Combo::zero(ctx, combo.family);
    let mut queue: Vec<(Word, u16, Scalar)> = combo
        .terms
        .iter()
        .map(|((w, u), c)| (w.clone(), *u, c.clone()))
        .collect();
    while let Some((word, tail, coeff)) = queue.pop() {
        if coeff.is_zero() {
            continue;
        }
        if fuel == 0 {
            return Err(Error::NonTermination(format!(
                "rewriting exceeded {} steps",
                fuel_budget
            )));
        }
        fuel -= 1;
        let step = match combo.family {
            Family::Matrix => next_gl_step(&word),
            Family::Antisymmetric => next_so_step(&word),
        };
        let (pos, replacement) = match step {
            None => {
                add_term(&mut out.terms, (word, tail), coeff);
                continue;
            }
            Some(Step::Swap(pos)) => {
                let (a, b) = word[pos];
                let (c, d) = word[pos + 1];
                let repl = match combo.family {
                    Family::Matrix => gl_swap_replacement(ctx, a, b, c, d),
                    Family::Antisymmetric => so_swap_replacement(ctx, a, b, c, d),
                };
                (pos, repl)
            }
            Some(Step::Exchange(pos)) => {
                let (a, b) = word[pos];
                let (c, d) = word[pos + 1];
                (pos, gl_exchange_replacement(ctx, a, b, c, d))
            }
            Some(Step::Cross(pos)) => {
                let (a, b) = word[pos];
                let (c, d) = word[pos + 1];
                (pos, so_cross_replacement(ctx, a, b, c, d))
            }
        };
        let prefix = &word[..pos];
        let suffix = &word[pos + 2..];
        for (mid, s, rc) in replacement {
            let cf = coeff.mul(&rc);
            if cf.is_zero() {
                continue;
            }
            if s == g.identity() {
                let mut w2 = prefix.to_vec();
                w2.extend_from_slice(&mid);
                w2.extend_from_slice(suffix);
                queue.push((w2, tail, cf));
            } else if suffix.is_empty() {
                let mut w2 = prefix.to_vec();
                w2.extend_from_slice(&mid);
                queue.push((w2, g.mul(s, tail), cf));
            } else {
                for (csuf, cc) in combo.conjugate_word(s, suffix) {
                    let mut w2 = prefix.to_vec();
                    w2.extend_from_slice(&mid);
                    w2.extend_from_slice(&csuf);
                    queue.push((w2, g.mul(s, tail), cf.mul(&cc)));
                }
            }
        }
    }
    Ok(out)
}

const REWRITE_FUEL: usize = 5_000_000;

/// Normal form in the matrix family: every term an admissible word times
/// a group element. Uses only the bracket and exchange relations, so the
/// result doubles as a spanning certificate.
pub fn gl_normal_form(x: &GlCombo) -> Result<GlCombo> {
    let nf = rewrite(&x.0, REWRITE_FUEL)?;
    for ((word, _), _) in &nf.terms {
        debug_assert!(gl_word_admissible(word), "normal form left an inadmissible word");
    }
    Ok(GlCombo(nf))
}

/// Normal form in the antisymmetric family: sorted noncrossing arc words
/// times group elements.
pub fn so_normal_form(x: &SoCombo) -> Result<SoCombo> {
    let nf = rewrite(&x.0, REWRITE_FUEL)?;
    for ((word, _), _) in &nf.terms {
        debug_assert!(so_word_admissible(word), "normal form left an inadmissible word");
    }
    Ok(SoCombo(nf))
}

// ---------------------------------------------------------------------------
// relation verification

/// Counts of verified identities for one generator family.
#[derive(Clone, Debug, serde::Serialize)]
pub struct PresentationReport {
    pub group: String,
    pub bracket_identities: usize,
    pub exchange_identities: usize,
}

/// Check the bracket and exchange relations of the matrix family against
/// the multiplication engine, for every index tuple. Exact equality.
pub fn verify_gl_presentation(ctx: &Arc<AlgebraContext>) -> Result<PresentationReport> {
    let g = ctx.group().clone();
    let n = g.rank();
    let mut brackets = 0;
    let mut exchanges = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let e_ij = gl_elem(ctx, i, j);
                    let e_kl = gl_elem(ctx, k, l);
                    let lhs = e_ij.commutator(&e_kl);
                    let rhs = replacement_to_element(ctx, Family::Matrix, &gl_bracket_terms(
                        ctx, i as u8, j as u8, k as u8, l as u8,
                    ));
                    if !lhs.sub(&rhs).is_zero() {
                        return Err(Error::ConstructionInvariantViolated(format!(
                            "bracket relation failed at ({},{},{},{})",
                            i + 1, j + 1, k + 1, l + 1
                        )));
                    }
                    brackets += 1;

                    let e_il = gl_elem(ctx, i, l);
                    let e_kj = gl_elem(ctx, k, j);
                    let lhs2 = e_ij.mul(&e_kl).sub(&e_il.mul(&e_kj));
                    let mut repl = gl_exchange_replacement(ctx, i as u8, j as u8, k as u8, l as u8);
                    // drop the main term: the exchange relation states the
                    // difference of the two products
                    repl.remove(0);
                    let rhs2 = replacement_to_element(ctx, Family::Matrix, &repl);
                    if !lhs2.sub(&rhs2).is_zero() {
                        return Err(Error::ConstructionInvariantViolated(format!(
                            "exchange relation failed at ({},{},{},{})",
                            i + 1, j + 1, k + 1, l + 1
                        )));
                    }
                    exchanges += 1;
                }
            }
        }
    }
    Ok(PresentationReport {
        group: g.spec().to_string(),
        bracket_identities: brackets,
        exchange_identities: exchanges,
    })
}

/// Check the bracket and symmetric exchange relations of the
/// antisymmetric family against the engine, for every index tuple.
pub fn verify_so_presentation(ctx: &Arc<AlgebraContext>) -> Result<PresentationReport> {
    ensure_antisym_supported(ctx)?;
    let g = ctx.group().clone();
    let n = g.rank();
    let mut brackets = 0;
    let mut exchanges = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let m_ij = so_elem(ctx, i, j);
                    let m_kl = so_elem(ctx, k, l);
                    let lhs = m_ij.commutator(&m_kl);
                    let rhs = replacement_to_element(ctx, Family::Antisymmetric, &so_bracket_terms(
                        ctx, i as u8, j as u8, k as u8, l as u8,
                    ));
                    if !lhs.sub(&rhs).is_zero() {
                        return Err(Error::ConstructionInvariantViolated(format!(
                            "antisymmetric bracket relation failed at ({},{},{},{})",
                            i + 1, j + 1, k + 1, l + 1
                        )));
                    }
                    brackets += 1;

                    // cyclic exchange: sum of products equals sum of
                    // generator-times-defect terms
                    let m_jk = so_elem(ctx, j, k);
                    let m_il = so_elem(ctx, i, l);
                    let m_ki = so_elem(ctx, k, i);
                    let m_jl = so_elem(ctx, j, l);
                    let lhs2 = m_ij
                        .mul(&m_kl)
                        .add(&m_jk.mul(&m_il))
                        .add(&m_ki.mul(&m_jl));
                    let s_kl = ctx.commutator_defect(k, l);
                    let s_il = ctx.commutator_defect(i, l);
                    let s_jl = ctx.commutator_defect(j, l);
                    let rhs2 = m_ij
                        .mul(&s_kl)
                        .add(&m_jk.mul(&s_il))
                        .add(&m_ki.mul(&s_jl));
                    if !lhs2.sub(&rhs2).is_zero() {
                        return Err(Error::ConstructionInvariantViolated(format!(
                            "cyclic exchange relation failed at ({},{},{},{})",
                            i + 1, j + 1, k + 1, l + 1
                        )));
                    }
                    exchanges += 1;
                }
            }
        }
    }
    Ok(PresentationReport {
        group: g.spec().to_string(),
        bracket_identities: brackets,
        exchange_identities: exchanges,
    })
}

fn replacement_to_element(
    ctx: &Arc<AlgebraContext>,
    family: Family,
    repl: &Replacement,
) -> PBWElement {
    let mut acc = ctx.zero();
    for (word, s, coeff) in repl {
        let e = expand_word(ctx, family, word).mul(&ctx.grp(*s));
        acc = acc.add(&e.scale(coeff));
    }
    acc
}

// ---------------------------------------------------------------------------
// basis certificates and membership

/// Row counts for one generator degree.
#[derive(Clone, Debug, serde::Serialize)]
pub struct BasisSlice {
    pub half_degree: usize,
    pub admissible_words: usize,
    pub rows: usize,
}

/// Exact-rank certificate for the admissible monomial basis through a
/// filtration bound.
#[derive(Clone, Debug, serde::Serialize)]
pub struct BasisCertificate {
    pub group: String,
    pub max_half_degree: usize,
    pub slices: Vec<BasisSlice>,
    pub total_rows: usize,
    pub rank: usize,
    pub independent: bool,
    /// True when a rational specialization already achieved full rank,
    /// which bounds the symbolic rank from below.
    pub by_specialization: bool,
}

fn basis_rows(
    ctx: &Arc<AlgebraContext>,
    family: Family,
    max_half_degree: usize,
) -> (Vec<BasisSlice>, Vec<PBWElement>) {
    let g = ctx.group();
    let order = g.order() as u16;
    let n = g.rank();
    let mut slices = Vec::new();
    let mut rows = Vec::new();
    for m in 0..=max_half_degree {
        let words = match family {
            Family::Matrix => gl_admissible_words(n, m),
            Family::Antisymmetric => so_admissible_words(n, m),
        };
        let mut count = 0;
        for word in &words {
            let base = expand_word(ctx, family, word);
            for v in 0..order {
                rows.push(base.mul(&ctx.grp(v)));
                count += 1;
            }
        }
        slices.push(BasisSlice {
            half_degree: m,
            admissible_words: words.len(),
            rows: count,
        });
    }
    (slices, rows)
}

/// Column indexing shared by a batch of elements.
fn column_map(rows: &[PBWElement], extra: Option<&PBWElement>) -> BTreeMap<PBWMonomial, usize> {
    let mut map = BTreeMap::new();
    for e in rows.iter().chain(extra) {
        for (m, _) in e.terms() {
            let next = map.len();
            map.entry(m.clone()).or_insert(next);
        }
    }
    map
}

fn sparse_symbolic(rows: &[PBWElement], map: &BTreeMap<PBWMonomial, usize>) -> SparseMat<Scalar> {
    let mut mat = SparseMat::new(map.len());
    for e in rows {
        mat.push_row(e.terms().map(|(m, c)| (map[m], c.clone())));
    }
    mat
}

/// Specialize every coefficient at the given parameter values; fails if
/// some coefficient has a pole there.
fn sparse_specialized(
    rows: &[PBWElement],
    map: &BTreeMap<PBWMonomial, usize>,
    assignment: &[(Var, CycNum)],
) -> Result<SparseMat<CycNum>> {
    let mut mat = SparseMat::new(map.len());
    for e in rows {
        let mut entries = Vec::new();
        for (m, c) in e.terms() {
            entries.push((map[m], c.evaluate(assignment)?));
        }
        mat.push_row(entries);
    }
    Ok(mat)
}

/// Parameter points used to bound symbolic ranks from below. The zero
/// point comes first: there the straightening corrections vanish, every
/// row stays inside one group-element column block, and elimination is
/// block-local.
fn witness_points(ctx: &Arc<AlgebraContext>) -> [Vec<(Var, CycNum)>; 2] {
    let classes = ctx.group().num_classes();
    let mut zero = vec![(Var::T, CycNum::zero()), (Var::Z, CycNum::zero())];
    let mut generic = vec![(Var::T, CycNum::one()), (Var::Z, CycNum::from_int(7))];
    for k in 0..classes {
        zero.push((Var::C(k as u8), CycNum::zero()));
        generic.push((Var::C(k as u8), CycNum::from_int(k as i64 + 2)));
    }
    [zero, generic]
}

fn certify(
    ctx: &Arc<AlgebraContext>,
    family: Family,
    max_half_degree: usize,
) -> Result<BasisCertificate> {
    let (slices, rows) = basis_rows(ctx, family, max_half_degree);
    let map = column_map(&rows, None);
    let total = rows.len();
    let mut rank = 0;
    let mut by_spec = false;
    for point in witness_points(ctx) {
        if let Ok(mat) = sparse_specialized(&rows, &map, &point) {
            let r = mat.rank();
            rank = rank.max(r);
            if r == total {
                by_spec = true;
                break;
            }
        }
    }
    if !by_spec {
        rank = sparse_symbolic(&rows, &map).rank();
    }
    Ok(BasisCertificate {
        group: ctx.group().spec().to_string(),
        max_half_degree,
        slices,
        total_rows: total,
        rank,
        independent: rank == total,
        by_specialization: by_spec,
    })
}

/// Certify the admissible matrix-family monomials times group elements
/// through filtration `2 * max_half_degree`.
pub fn gl_basis_certificate(
    ctx: &Arc<AlgebraContext>,
    max_half_degree: usize,
) -> Result<BasisCertificate> {
    certify(ctx, Family::Matrix, max_half_degree)
}

/// Certify the admissible antisymmetric-family monomials times group
/// elements through filtration `2 * max_half_degree`.
pub fn so_basis_certificate(
    ctx: &Arc<AlgebraContext>,
    max_half_degree: usize,
) -> Result<BasisCertificate> {
    ensure_antisym_supported(ctx)?;
    certify(ctx, Family::Antisymmetric, max_half_degree)
}

fn contains(
    ctx: &Arc<AlgebraContext>,
    family: Family,
    target: &PBWElement,
    max_half_degree: usize,
) -> bool {
    let (_, rows) = basis_rows(ctx, family, max_half_degree);
    let map = column_map(&rows, Some(target));
    let mat = sparse_symbolic(&rows, &map);
    let vec: BTreeMap<usize, Scalar> = target
        .terms()
        .map(|(m, c)| (map[m], c.clone()))
        .collect();
    mat.contains_in_span(&vec)
}

/// Exact symbolic membership of an element in the span of admissible
/// matrix-family monomials times group elements.
pub fn gl_contains(
    ctx: &Arc<AlgebraContext>,
    target: &PBWElement,
    max_half_degree: usize,
) -> bool {
    contains(ctx, Family::Matrix, target, max_half_degree)
}

/// Exact symbolic membership in the span of admissible
/// antisymmetric-family monomials times group elements.
pub fn so_contains(
    ctx: &Arc<AlgebraContext>,
    target: &PBWElement,
    max_half_degree: usize,
) -> Result<bool> {
    ensure_antisym_supported(ctx)?;
    Ok(contains(ctx, Family::Antisymmetric, target, max_half_degree))
}

// ---------------------------------------------------------------------------
// printing

fn fmt_combo(f: &mut fmt::Formatter<'_>, combo: &Combo, letter: char) -> fmt::Result {
    if combo.terms.is_empty() {
        return write!(f, "0");
    }
    let g = combo.ctx.group();
    let mut first = true;
    for ((word, tail), s) in &combo.terms {
        let mut factors: Vec<String> = word
            .iter()
            .map(|(i, j)| format!("{}[{},{}]", letter, i + 1, j + 1))
            .collect();
        if *tail != g.identity() {
            factors.push(format!("w[{}]", g.name(*tail)));
        }
        let coeff_str = format!("{}", s);
        let negated = s.neg();
        let neg_str = format!("{}", negated);
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

impl fmt::Display for GlCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combo(f, &self.0, 'E')
    }
}

impl fmt::Display for SoCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combo(f, &self.0, 'M')
    }
}

impl fmt::Debug for GlCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Debug for SoCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupData, GroupSpec};

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
    fn matrix_presentation_holds() {
        for name in ["D3", "B2", "G3,1,2"] {
            let h = ctx(name);
            let report = verify_gl_presentation(&h).unwrap();
            let n4 = h.group().rank().pow(4);
            assert_eq!(report.bracket_identities, n4, "{}", name);
            assert_eq!(report.exchange_identities, n4, "{}", name);
        }
    }

    #[test]
    fn antisymmetric_presentation_holds() {
        for name in ["D3", "B2"] {
            let h = ctx(name);
            let report = verify_so_presentation(&h).unwrap();
            let n4 = h.group().rank().pow(4);
            assert_eq!(report.bracket_identities, n4, "{}", name);
            assert_eq!(report.exchange_identities, n4, "{}", name);
        }
    }

    #[test]
    fn antisymmetric_family_needs_real_group() {
        let h = ctx("G3,1,2");
        assert!(matches!(
            SoCombo::generator(&h, 0, 1),
            Err(Error::NotRealGroup)
        ));
        assert!(matches!(
            verify_so_presentation(&h),
            Err(Error::NotRealGroup)
        ));
    }

    #[test]
    fn combo_multiplication_matches_engine() {
        let h = ctx("D3");
        let a = GlCombo::generator(&h, 0, 1)
            .mul(&GlCombo::group_elem(&h, h.group().by_name("r1").unwrap()))
            .mul(&GlCombo::generator(&h, 1, 0));
        let direct = gl_elem(&h, 0, 1)
            .mul(&h.grp(h.group().by_name("r1").unwrap()))
            .mul(&gl_elem(&h, 1, 0));
        assert!(a.expand().sub(&direct).is_zero());

        let b = SoCombo::generator(&h, 1, 0)
            .unwrap()
            .mul(&SoCombo::group_elem(&h, h.group().by_name("s1").unwrap()).unwrap())
            .mul(&SoCombo::generator(&h, 0, 1).unwrap());
        let direct = so_elem(&h, 1, 0)
            .mul(&h.grp(h.group().by_name("s1").unwrap()))
            .mul(&so_elem(&h, 0, 1));
        assert!(b.expand().sub(&direct).is_zero());
    }

    #[test]
    fn euler_combo_matches_engine_euler() {
        for name in ["D3", "G3,1,2"] {
            let h = ctx(name);
            assert!(GlCombo::euler(&h).expand().sub(&h.euler()).is_zero(), "{}", name);
        }
    }

    #[test]
    fn matrix_normal_form_is_admissible_and_exact() {
        let h = ctx("D3");
        // products chosen to exercise both rewrite rules
        let samples = vec![
            GlCombo::generator(&h, 0, 1).mul(&GlCombo::generator(&h, 1, 0)),
            GlCombo::generator(&h, 1, 1)
                .mul(&GlCombo::generator(&h, 0, 0))
                .mul(&GlCombo::generator(&h, 0, 1)),
            GlCombo::generator(&h, 1, 0)
                .mul(&GlCombo::group_elem(&h, h.group().by_name("s1").unwrap()))
                .mul(&GlCombo::generator(&h, 1, 1))
                .mul(&GlCombo::generator(&h, 0, 1)),
        ];
        for sample in samples {
            let nf = gl_normal_form(&sample).unwrap();
            for ((word, _), _) in &nf.0.terms {
                assert!(gl_word_admissible(word), "{:?}", word);
            }
            assert!(nf.expand().sub(&sample.expand()).is_zero());
        }
    }

    #[test]
    fn matrix_normal_form_zips_the_exchange_pair() {
        let h = ctx("D3");
        let sample = GlCombo::generator(&h, 0, 1).mul(&GlCombo::generator(&h, 1, 0));
        let nf = gl_normal_form(&sample).unwrap();
        let zip_word: Word = vec![(0, 0), (1, 1)];
        let coeff = nf
            .0
            .terms
            .get(&(zip_word, h.group().identity()))
            .cloned()
            .unwrap_or_else(Scalar::zero);
        assert!(coeff.is_one());
    }

    #[test]
    fn antisymmetric_normal_form_on_rank_two_and_three() {
        for name in ["D3", "B3"] {
            let h = ctx(name);
            let n = h.group().rank();
            let w = h.group().by_name(if name == "D3" { "s1" } else { "g1" }).unwrap();
            let sample = SoCombo::generator(&h, n - 1, 0)
                .unwrap()
                .mul(&SoCombo::group_elem(&h, w).unwrap())
                .mul(&SoCombo::generator(&h, 0, n - 1).unwrap())
                .mul(&SoCombo::generator(&h, 0, 1).unwrap());
            let nf = so_normal_form(&sample).unwrap();
            for ((word, _), _) in &nf.0.terms {
                assert!(so_word_admissible(word), "{:?}", word);
            }
            assert!(nf.expand().sub(&sample.expand()).is_zero(), "{}", name);
        }
    }

    #[test]
    fn antisymmetric_normal_form_resolves_crossings() {
        // rank four supplies the first genuine crossing: arcs (1,3) and
        // (2,4) interleave
        let h = ctx("B4");
        let sample = SoCombo::generator(&h, 0, 2)
            .unwrap()
            .mul(&SoCombo::generator(&h, 1, 3).unwrap());
        assert!(!multiset_noncrossing(&[(0, 2), (1, 3)]));
        let nf = so_normal_form(&sample).unwrap();
        for ((word, _), _) in &nf.0.terms {
            assert!(so_word_admissible(word), "{:?}", word);
        }
        assert!(nf.expand().sub(&sample.expand()).is_zero());

        // same with the factors in the other order, which needs an
        // orientation swap first
        let rev = SoCombo::generator(&h, 1, 3)
            .unwrap()
            .mul(&SoCombo::generator(&h, 0, 2).unwrap());
        let nf2 = so_normal_form(&rev).unwrap();
        assert!(nf2.expand().sub(&rev.expand()).is_zero());
    }

    #[test]
    fn admissible_counts_match_formulas() {
        // matrix family: squares of multiset counts
        for n in 1..=3 {
            for m in 0..=3 {
                assert_eq!(gl_admissible_words(n, m).len(), gl_count_formula(n, m));
            }
        }
        // antisymmetric family in rank three: no crossings exist, so the
        // count is the full multiset count on three arcs
        assert_eq!(so_admissible_words(3, 2).len(), 6);
        // rank four, degree two: one crossing pair is excluded from the
        // twenty-one arc pairs
        assert_eq!(so_admissible_words(4, 2).len(), 20);
    }

    #[test]
    fn matrix_basis_certificate_dihedral() {
        let h = ctx("D3");
        let cert = gl_basis_certificate(&h, 2).unwrap();
        assert_eq!(cert.total_rows, 84);
        assert_eq!(cert.rank, 84);
        assert!(cert.independent);
        assert!(cert.by_specialization);
        let per_degree: Vec<usize> = cert.slices.iter().map(|s| s.admissible_words).collect();
        assert_eq!(per_degree, vec![1, 4, 9]);
    }

    #[test]
    fn antisymmetric_basis_certificate_hyperoctahedral() {
        let h = ctx("B3");
        let cert = so_basis_certificate(&h, 2).unwrap();
        assert_eq!(cert.total_rows, 480);
        assert_eq!(cert.rank, 480);
        assert!(cert.independent);
        let per_degree: Vec<usize> = cert.slices.iter().map(|s| s.admissible_words).collect();
        assert_eq!(per_degree, vec![1, 3, 6]);
    }

    #[test]
    fn membership_separates_the_two_families() {
        // at t = c = 0 the monomial 2 x1 x2 y1 y2 lies in the matrix
        // family but not in the antisymmetric one
        let h = ctx_at_zero("D3");
        let target = h
            .monomial(vec![1, 1], vec![1, 1], h.group().identity())
            .scale(&Scalar::from_int(2));
        assert!(gl_contains(&h, &target, 2));
        assert!(!so_contains(&h, &target, 2).unwrap());

        // positive control: the square of the only arc is in the span
        let sq = so_elem(&h, 0, 1).mul(&so_elem(&h, 0, 1));
        assert!(so_contains(&h, &sq, 2).unwrap());
    }

    #[test]
    fn display_uses_bracket_syntax() {
        let h = ctx("D3");
        let e = GlCombo::generator(&h, 0, 1)
            .mul(&GlCombo::group_elem(&h, h.group().by_name("r1").unwrap()));
        assert_eq!(format!("{}", e), "E[1,2]*w[r1]");
        let m = SoCombo::generator(&h, 1, 0).unwrap();
        assert_eq!(format!("{}", m), "-M[1,2]");
    }
}
