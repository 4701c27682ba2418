//! Exact dense linear algebra over the crate's coefficient fields.
//!
//! Everything reduces to row-reduced echelon form, which is unique for a
//! given row space. Pivot rows are chosen by a complexity score so that
//! symbolic entries stay small, and the uniqueness of the RREF keeps every
//! derived answer (rank, kernel basis, span membership) independent of
//! that heuristic.

use crate::cyclotomic::CycNum;
use crate::error::Result;
use crate::scalar::Scalar;

/// The operations elimination needs, implemented by both coefficient
/// fields. Method names carry an `f_` prefix so generic code never
/// collides with inherent methods.
pub trait FieldOps: Clone + PartialEq {
    fn f_zero() -> Self;
    fn f_one() -> Self;
    fn f_add(&self, other: &Self) -> Self;
    fn f_sub(&self, other: &Self) -> Self;
    fn f_mul(&self, other: &Self) -> Self;
    fn f_neg(&self) -> Self;
    fn f_inv(&self) -> Result<Self>;
    fn f_is_zero(&self) -> bool;
    /// Rough size estimate used to pick cheap pivots.
    fn f_complexity(&self) -> usize {
        1
    }
}

impl FieldOps for CycNum {
    fn f_zero() -> Self {
        CycNum::zero()
    }
    fn f_one() -> Self {
        CycNum::one()
    }
    fn f_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn f_sub(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn f_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn f_neg(&self) -> Self {
        self.neg()
    }
    fn f_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn f_complexity(&self) -> usize {
        self.conductor() as usize
    }
}

impl FieldOps for Scalar {
    fn f_zero() -> Self {
        Scalar::zero()
    }
    fn f_one() -> Self {
        Scalar::one()
    }
    fn f_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn f_sub(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn f_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn f_neg(&self) -> Self {
        self.neg()
    }
    fn f_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn f_complexity(&self) -> usize {
        self.complexity()
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug)]
pub struct DMat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: FieldOps> DMat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DMat { rows, cols, data: vec![F::f_zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        DMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduction to row-reduced echelon form. Returns the pivot
    /// column indices in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut best: Option<(usize, usize)> = None;
            for rr in r..self.rows {
                let v = self.get(rr, c);
                if !v.f_is_zero() {
                    let score = v.f_complexity();
                    match best {
                        Some((_, s)) if s <= score => {}
                        _ => best = Some((rr, score)),
                    }
                }
            }
            let Some((pr, _)) = best else { continue };
            self.swap_rows(r, pr);
            let inv = self
                .get(r, c)
                .f_inv()
                .expect("pivot entry is non-zero");
            for cc in c..self.cols {
                let v = self.get(r, cc);
                if !v.f_is_zero() {
                    let nv = v.f_mul(&inv);
                    self.set(r, cc, nv);
                }
            }
            for rr in 0..self.rows {
                if rr == r {
                    continue;
                }
                let factor = self.get(rr, c).clone();
                if factor.f_is_zero() {
                    continue;
                }
                for cc in c..self.cols {
                    let p = self.get(r, cc);
                    if p.f_is_zero() {
                        continue;
                    }
                    let nv = self.get(rr, cc).f_sub(&factor.f_mul(p));
                    self.set(rr, cc, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Canonical kernel basis: one vector per free column of the RREF,
    /// the free coordinate set to one.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().cloned().collect();
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if pivot_set.contains(&fc) {
                continue;
            }
            let mut v = vec![F::f_zero(); self.cols];
            v[fc] = F::f_one();
            for (k, &pc) in pivots.iter().enumerate() {
                let coeff = m.get(k, fc);
                if !coeff.f_is_zero() {
                    v[pc] = coeff.f_neg();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Sparse row-major matrix over a fixed column count. Row reduction
/// picks, at every step, the remaining row with the fewest entries and
/// the cheapest leading coefficient; the fully reduced result is the
/// canonical RREF of the row space regardless of those choices.
#[derive(Clone, Debug)]
pub struct SparseMat<F> {
    cols: usize,
    rows: Vec<std::collections::BTreeMap<usize, F>>,
}

impl<F: FieldOps> SparseMat<F> {
    pub fn new(cols: usize) -> Self {
        SparseMat { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row<I: IntoIterator<Item = (usize, F)>>(&mut self, entries: I) {
        let mut row = std::collections::BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column out of range");
            if v.f_is_zero() {
                continue;
            }
            match row.get_mut(&c) {
                Some(slot) => {
                    let s: F = v.f_add(slot);
                    if s.f_is_zero() {
                        row.remove(&c);
                    } else {
                        *slot = s;
                    }
                }
                None => {
                    row.insert(c, v);
                }
            }
        }
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    /// Reduce in place to RREF. Returns the pivot columns in ascending
    /// order; afterwards `self.rows` holds exactly one row per pivot,
    /// sorted by pivot column.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut reduced: Vec<std::collections::BTreeMap<usize, F>> = Vec::new();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut pending = std::mem::take(&mut self.rows);
        while !pending.is_empty() {
            // cheapest candidate: fewest entries, then cheapest lead
            let mut best = 0;
            let mut best_key = usize::MAX;
            for (i, row) in pending.iter().enumerate() {
                let (c, v) = row.iter().next().expect("pending rows are non-empty");
                let key = row.len() * 1000 + v.f_complexity().min(900) + c % 7;
                if key < best_key {
                    best_key = key;
                    best = i;
                }
            }
            let mut row = pending.swap_remove(best);
            // eliminate known pivots from the candidate
            for (pc, prow) in pivot_cols.iter().zip(reduced.iter()) {
                if let Some(factor) = row.get(pc).cloned() {
                    row.remove(pc);
                    for (c, v) in prow {
                        if c == pc {
                            continue;
                        }
                        let delta = factor.f_mul(v).f_neg();
                        match row.get_mut(c) {
                            Some(slot) => {
                                let s = slot.f_add(&delta);
                                if s.f_is_zero() {
                                    row.remove(c);
                                } else {
                                    *slot = s;
                                }
                            }
                            None => {
                                row.insert(*c, delta);
                            }
                        }
                    }
                }
            }
            if row.is_empty() {
                continue;
            }
            // normalize on its leading column and eliminate it everywhere
            let (&lead, _) = row.iter().next().unwrap();
            let inv = row
                .get(&lead)
                .unwrap()
                .f_inv()
                .expect("leading entry is non-zero");
            let row: std::collections::BTreeMap<usize, F> = row
                .into_iter()
                .map(|(c, v)| (c, v.f_mul(&inv)))
                .collect();
            for prow in reduced.iter_mut() {
                if let Some(factor) = prow.get(&lead).cloned() {
                    prow.remove(&lead);
                    for (c, v) in &row {
                        if *c == lead {
                            continue;
                        }
                        let delta = factor.f_mul(v).f_neg();
                        match prow.get_mut(c) {
                            Some(slot) => {
                                let s = slot.f_add(&delta);
                                if s.f_is_zero() {
                                    prow.remove(c);
                                } else {
                                    *slot = s;
                                }
                            }
                            None => {
                                prow.insert(*c, delta);
                            }
                        }
                    }
                }
            }
            let pos = pivot_cols.binary_search(&lead).unwrap_err();
            pivot_cols.insert(pos, lead);
            reduced.insert(pos, row);
        }
        self.rows = reduced;
        pivot_cols
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new();
        for row in &self.rows {
            ech.insert(row.clone());
        }
        ech.rank()
    }

    /// Canonical kernel basis, one dense vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().cloned().collect();
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if pivot_set.contains(&fc) {
                continue;
            }
            let mut v = vec![F::f_zero(); self.cols];
            v[fc] = F::f_one();
            for (k, &pc) in pivots.iter().enumerate() {
                if let Some(coeff) = m.rows[k].get(&fc) {
                    v[pc] = coeff.f_neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Is the target row in the span of the matrix rows?
    pub fn contains_in_span(&self, target: &std::collections::BTreeMap<usize, F>) -> bool {
        if target.is_empty() {
            return true;
        }
        let mut ech = Echelon::new();
        for row in &self.rows {
            ech.insert(row.clone());
        }
        !ech.insert(target.clone())
    }
}

/// Incrementally maintained forward echelon. Pivot rows are normalized
/// but never revisited, so this is cheaper than an RREF and sufficient
/// for rank growth and span membership.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pivots: std::collections::BTreeMap<usize, std::collections::BTreeMap<usize, F>>,
}

impl<F: FieldOps> Echelon<F> {
    pub fn new() -> Self {
        Echelon { pivots: std::collections::BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce the row against the current pivots; returns true when a
    /// new pivot was produced (the row was outside the current span).
    pub fn insert(&mut self, mut row: std::collections::BTreeMap<usize, F>) -> bool {
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(prow) => {
                    let factor = row.remove(&lead).expect("leading entry present");
                    for (c, v) in prow {
                        if *c == lead {
                            continue;
                        }
                        let delta = factor.f_mul(v).f_neg();
                        match row.get_mut(c) {
                            Some(slot) => {
                                let s = slot.f_add(&delta);
                                if s.f_is_zero() {
                                    row.remove(c);
                                } else {
                                    *slot = s;
                                }
                            }
                            None => {
                                row.insert(*c, delta);
                            }
                        }
                    }
                }
                None => {
                    let inv = row
                        .get(&lead)
                        .unwrap()
                        .f_inv()
                        .expect("leading entry is non-zero");
                    let normalized: std::collections::BTreeMap<usize, F> =
                        row.into_iter().map(|(c, v)| (c, v.f_mul(&inv))).collect();
                    self.pivots.insert(lead, normalized);
                    return true;
                }
            }
        }
    }

    /// Insert a dense row given as a coefficient slice.
    pub fn insert_dense(&mut self, row: &[F]) -> bool {
        let sparse: std::collections::BTreeMap<usize, F> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.f_is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        self.insert(sparse)
    }
}

impl<F: FieldOps> Default for Echelon<F> {
    fn default() -> Self {
        Echelon::new()
    }
}

/// Rank of a collection of row vectors.
pub fn row_rank<F: FieldOps>(rows: &[Vec<F>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    DMat::from_rows(rows.to_vec()).rank()
}

/// Does `target` lie in the row span of `basis`?
pub fn in_row_span<F: FieldOps>(basis: &[Vec<F>], target: &[F]) -> bool {
    if target.iter().all(|v| v.f_is_zero()) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let r0 = row_rank(basis);
    let mut all = basis.to_vec();
    all.push(target.to_vec());
    row_rank(&all) == r0
}

/// Are the two row spans equal?
pub fn same_row_span<F: FieldOps>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    let ra = row_rank(a);
    let rb = row_rank(b);
    if ra != rb {
        return false;
    }
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    row_rank(&all) == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> CycNum {
        CycNum::from_int(k)
    }

    #[test]
    fn rank_and_kernel() {
        // rows: (1,2,3), (2,4,6), (0,1,1) has rank 2
        let m = DMat::from_rows(vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        // kernel vector satisfies all rows
        for r in 0..3 {
            let mut acc = CycNum::zero();
            for c in 0..3 {
                acc = acc.add(&m.get(r, c).mul(&ker[0][c]));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn rref_is_canonical_under_row_shuffles() {
        let rows = vec![
            vec![q(0), q(2), q(4)],
            vec![q(1), q(1), q(1)],
            vec![q(3), q(1), q(-1)],
        ];
        let mut m1 = DMat::from_rows(rows.clone());
        let mut shuffled = rows;
        shuffled.rotate_left(1);
        let mut m2 = DMat::from_rows(shuffled);
        m1.rref();
        m2.rref();
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(m1.get(r, c), m2.get(r, c));
            }
        }
    }

    #[test]
    fn span_membership_over_scalars() {
        use crate::scalar::Scalar;
        let t = Scalar::t();
        let one = Scalar::one();
        // basis rows (1, t), (0, 1) span everything in dimension 2
        let basis = vec![vec![one.clone(), t.clone()], vec![Scalar::zero(), one.clone()]];
        assert!(in_row_span(&basis, &[t.clone(), t.mul(&t)]));
        let thin = vec![vec![one.clone(), t.clone()]];
        assert!(!in_row_span(&thin, &[one.clone(), one.clone()]));
        assert!(in_row_span(&thin, &[t.clone(), t.mul(&t)]));
    }

    #[test]
    fn span_equality() {
        let a = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        let b = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert!(same_row_span(&a, &b));
        let c = vec![vec![q(1), q(1)]];
        assert!(!same_row_span(&a, &c));
    }

    #[test]
    fn sparse_matches_dense() {
        let rows = vec![
            vec![q(0), q(2), q(4), q(0)],
            vec![q(1), q(1), q(1), q(0)],
            vec![q(3), q(1), q(-1), q(0)],
            vec![q(1), q(3), q(5), q(0)],
        ];
        let dense = DMat::from_rows(rows.clone());
        let mut sparse = SparseMat::new(4);
        for r in &rows {
            sparse.push_row(r.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()));
        }
        assert_eq!(sparse.rank(), dense.rank());
        let dk = dense.kernel();
        let sk = sparse.kernel();
        assert_eq!(dk.len(), sk.len());
        for (dv, sv) in dk.iter().zip(sk.iter()) {
            assert_eq!(dv, sv);
        }
    }

    #[test]
    fn sparse_rref_canonical_and_duplicate_columns_fold() {
        // push_row folds repeated column indices before storing
        let mut m = SparseMat::new(3);
        m.push_row(vec![(0, q(1)), (0, q(-1)), (2, q(5))]);
        m.push_row(vec![(2, q(1))]);
        assert_eq!(m.rank(), 1);

        let mut m1 = SparseMat::new(3);
        m1.push_row(vec![(0, q(2)), (1, q(4))]);
        m1.push_row(vec![(1, q(1)), (2, q(1))]);
        let mut m2 = SparseMat::new(3);
        m2.push_row(vec![(1, q(1)), (2, q(1))]);
        m2.push_row(vec![(0, q(1)), (1, q(2))]);
        let p1 = m1.rref();
        let p2 = m2.rref();
        assert_eq!(p1, p2);
        assert_eq!(m1.rows, m2.rows);
    }

    #[test]
    fn sparse_span_membership() {
        let mut m = SparseMat::new(3);
        m.push_row(vec![(0, q(1)), (1, q(1))]);
        m.push_row(vec![(1, q(1)), (2, q(1))]);
        let inside: std::collections::BTreeMap<usize, CycNum> =
            vec![(0, q(1)), (2, q(-1))].into_iter().collect();
        let outside: std::collections::BTreeMap<usize, CycNum> =
            vec![(0, q(1)), (1, q(1)), (2, q(1))].into_iter().collect();
        assert!(m.contains_in_span(&inside));
        assert!(!m.contains_in_span(&outside));
    }
}
