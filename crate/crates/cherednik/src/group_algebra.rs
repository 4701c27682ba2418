//! The group algebra of a reflection group, its central idempotents, and
//! the 2-cocycle attached to a central quotient.
//!
//! The centre of the group acts by scalars on any irreducible, so the
//! characters of the (cyclic) centre cut the group algebra into blocks
//! `e_i C W`. Choosing coset representatives for `W / Z(W)` turns each
//! block into a twisted group algebra of the quotient; the twist is a
//! 2-cocycle measuring how representatives multiply, and changing the
//! representatives changes the cocycle by an explicit coboundary. All of
//! that is constructed and verified here with exact arithmetic.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::GroupData;
use crate::scalar::Scalar;

/// A group algebra element: finitely many group terms with scalar
/// coefficients.
#[derive(Clone)]
pub struct GroupAlgebraElement {
    group: Arc<GroupData>,
    terms: BTreeMap<u16, Scalar>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.spec() == other.group.spec() && self.terms == other.terms
    }
}

impl std::fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&w, s)| format!("({})*{}", s, self.group.name(w)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl GroupAlgebraElement {
    pub fn zero(group: Arc<GroupData>) -> Self {
        GroupAlgebraElement { group, terms: BTreeMap::new() }
    }

    pub fn unit(group: Arc<GroupData>) -> Self {
        Self::from_element(group.clone(), 0)
    }

    pub fn from_element(group: Arc<GroupData>, w: u16) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Scalar::one());
        GroupAlgebraElement { group, terms }
    }

    pub fn group(&self) -> &Arc<GroupData> {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u16, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: u16) -> Scalar {
        self.terms.get(&w).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, w: u16, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                let v = slot.add(&s);
                if v.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(w, s);
            }
        }
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.clone();
        for (&w, s) in &other.terms {
            out.add_term(w, s.clone());
        }
        out
    }

    pub fn sub(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(&w, s)| (w, s.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> GroupAlgebraElement {
        if s.is_zero() {
            return GroupAlgebraElement::zero(self.group.clone());
        }
        GroupAlgebraElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(&w, c)| (w, c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(self.group.clone());
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                out.add_term(self.group.mul(a, b), ca.mul(cb));
            }
        }
        out
    }

    /// Is this element central in the group algebra?
    pub fn is_central(&self) -> bool {
        (0..self.group.order() as u16).all(|g| {
            let ge = GroupAlgebraElement::from_element(self.group.clone(), g);
            ge.mul(self) == self.mul(&ge)
        })
    }
}

/// The characters of the cyclic centre, as idempotents. Entry `i` is
/// `(1/|Z|) sum_k omega^(-ik) z^k` for the chosen generator `z` acting by
/// the scalar `omega`; it projects onto the block where `z` acts by
/// `omega^i`.
pub fn centre_idempotents(group: &Arc<GroupData>) -> Result<Vec<GroupAlgebraElement>> {
    let zc = group.centre_order();
    let z0 = group.centre_generator();
    let omega = group.centre_scalar().clone();
    let inv_zc = Scalar::from_frac(1, zc as i64);
    let mut idems = Vec::with_capacity(zc);
    for i in 0..zc {
        let mut e = GroupAlgebraElement::zero(group.clone());
        let mut zk = group.identity();
        for k in 0..zc {
            // omega^(-ik)
            let mut chi = CycNum::one();
            for _ in 0..(i * k) % zc {
                chi = chi.mul(&omega);
            }
            let chi = chi.inv().expect("root of unity");
            e.add_term(zk, inv_zc.mul(&Scalar::from_cyc(chi)));
            zk = group.mul(zk, z0);
        }
        idems.push(e);
    }
    // Orthogonality, completeness and centrality, checked exactly.
    let mut total = GroupAlgebraElement::zero(group.clone());
    for (i, ei) in idems.iter().enumerate() {
        for (j, ej) in idems.iter().enumerate() {
            let p = ei.mul(ej);
            let want = if i == j {
                ei.clone()
            } else {
                GroupAlgebraElement::zero(group.clone())
            };
            if p != want {
                return Err(Error::ConstructionInvariantViolated(format!(
                    "central idempotents {} and {} fail orthogonality",
                    i, j
                )));
            }
        }
        if !ei.is_central() {
            return Err(Error::ConstructionInvariantViolated(format!(
                "idempotent {} is not central",
                i
            )));
        }
        total = total.add(ei);
    }
    if total != GroupAlgebraElement::unit(group.clone()) {
        return Err(Error::ConstructionInvariantViolated(
            "central idempotents do not sum to one".into(),
        ));
    }
    Ok(idems)
}

/// Eigen-idempotents of the rotation subgroup of a dihedral group:
/// `a_i = (1/l) sum_k zeta^(-ki) r^k`, so the basic rotation acts on
/// `a_i` by `zeta^i`.
pub fn dihedral_rotation_idempotents(group: &Arc<GroupData>) -> Result<Vec<GroupAlgebraElement>> {
    let l = match group.spec() {
        crate::group::GroupSpec::Dihedral(l) => *l as usize,
        other => {
            return Err(Error::UnsupportedSpec(format!(
                "rotation idempotents need a dihedral group, got {}",
                other
            )))
        }
    };
    let r1 = group.by_name("r1").expect("rotation generator exists");
    let inv_l = Scalar::from_frac(1, l as i64);
    let mut out = Vec::with_capacity(l);
    for i in 0..l as i64 {
        let mut e = GroupAlgebraElement::zero(group.clone());
        let mut rk = group.identity();
        for k in 0..l as i64 {
            let chi = CycNum::zeta(l as u32, -k * i);
            e.add_term(rk, inv_l.mul(&Scalar::from_cyc(chi)));
            rk = group.mul(rk, r1);
        }
        out.push(e);
    }
    Ok(out)
}

/// Symmetrized rotation idempotents `b_i = a_i + a_(-i)` (just `a_i` when
/// `i = -i` mod `l`), for `i = 0 .. floor(l/2)`.
pub fn dihedral_symmetric_idempotents(
    group: &Arc<GroupData>,
) -> Result<Vec<GroupAlgebraElement>> {
    let a = dihedral_rotation_idempotents(group)?;
    let l = a.len();
    let mut out = Vec::new();
    for i in 0..=l / 2 {
        let mirror = (l - i) % l;
        if mirror == i {
            out.push(a[i].clone());
        } else {
            out.push(a[i].add(&a[mirror]));
        }
    }
    Ok(out)
}

/// Antisymmetrized combinations `d_i = a_i - a_(-i)` for
/// `i = 1 .. ceil(l/2) - 1`; empty when `l <= 2`.
pub fn dihedral_antisymmetric_elements(
    group: &Arc<GroupData>,
) -> Result<Vec<GroupAlgebraElement>> {
    let a = dihedral_rotation_idempotents(group)?;
    let l = a.len();
    let mut out = Vec::new();
    for i in 1..=(l - 1) / 2 {
        let mirror = l - i;
        out.push(a[i].sub(&a[mirror]));
    }
    Ok(out)
}

/// The quotient of a group by its centre, with a chosen transversal and
/// the resulting central 2-cocycle.
pub struct CentralQuotient {
    group: Arc<GroupData>,
    /// Coset index of each group element.
    coset_of: Vec<usize>,
    /// One representative per coset; coset 0 contains the identity.
    transversal: Vec<u16>,
    /// Exponent table: representatives multiply as
    /// `w_a w_b = z^exps[a][b] w_(a*b)` for the centre generator `z`.
    exps: Vec<Vec<usize>>,
    /// Coset multiplication table.
    coset_mul: Vec<Vec<usize>>,
}

impl CentralQuotient {
    /// Quotient with the default transversal: the least element of each
    /// coset in table order.
    pub fn new(group: Arc<GroupData>) -> Result<CentralQuotient> {
        let order = group.order();
        let zc = group.centre_order();
        let mut coset_of = vec![usize::MAX; order];
        let mut transversal = Vec::new();
        for g in 0..order as u16 {
            if coset_of[g as usize] != usize::MAX {
                continue;
            }
            let idx = transversal.len();
            for &z in group.centre_elements() {
                coset_of[group.mul(z, g) as usize] = idx;
            }
            transversal.push(g);
        }
        assert_eq!(transversal.len() * zc, order);
        Self::with_coset_structure(group, coset_of, transversal)
    }

    /// Quotient with a caller-supplied transversal. The representatives
    /// must hit each coset exactly once and start with a representative
    /// of the identity coset.
    pub fn with_transversal(group: Arc<GroupData>, reps: Vec<u16>) -> Result<CentralQuotient> {
        let base = CentralQuotient::new(group.clone())?;
        let expected = base.transversal.len();
        if reps.len() != expected {
            return Err(Error::NotATransversal(format!(
                "expected {} representatives, got {}",
                expected,
                reps.len()
            )));
        }
        let mut seen = vec![false; expected];
        for &r in &reps {
            if r as usize >= group.order() {
                return Err(Error::NotATransversal(format!(
                    "element index {} out of range",
                    r
                )));
            }
            let cs = base.coset_of[r as usize];
            if seen[cs] {
                return Err(Error::NotATransversal(format!(
                    "two representatives land in coset {}",
                    cs
                )));
            }
            seen[cs] = true;
        }
        // Re-index cosets so coset i is represented by reps[i].
        let mut relabel = vec![usize::MAX; expected];
        for (i, &r) in reps.iter().enumerate() {
            relabel[base.coset_of[r as usize]] = i;
        }
        let coset_of: Vec<usize> = base.coset_of.iter().map(|&cs| relabel[cs]).collect();
        Self::with_coset_structure(group, coset_of, reps)
    }

    fn with_coset_structure(
        group: Arc<GroupData>,
        coset_of: Vec<usize>,
        transversal: Vec<u16>,
    ) -> Result<CentralQuotient> {
        let nq = transversal.len();
        let z0 = group.centre_generator();
        let zc = group.centre_order();
        // powers of the centre generator, for factor recognition
        let mut zpow = vec![group.identity()];
        for _ in 1..zc {
            zpow.push(group.mul(*zpow.last().unwrap(), z0));
        }
        let mut exps = vec![vec![0usize; nq]; nq];
        let mut coset_mul = vec![vec![0usize; nq]; nq];
        for a in 0..nq {
            for b in 0..nq {
                let prod = group.mul(transversal[a], transversal[b]);
                let cs = coset_of[prod as usize];
                coset_mul[a][b] = cs;
                // prod = z^k * transversal[cs] for a unique k
                let mut found = None;
                for (k, &z) in zpow.iter().enumerate() {
                    if group.mul(z, transversal[cs]) == prod {
                        found = Some(k);
                        break;
                    }
                }
                exps[a][b] = found.ok_or_else(|| {
                    Error::ConstructionInvariantViolated(
                        "representative product is not central times a representative".into(),
                    )
                })?;
            }
        }
        Ok(CentralQuotient { group, coset_of, transversal, exps, coset_mul })
    }

    pub fn group(&self) -> &Arc<GroupData> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[u16] {
        &self.transversal
    }

    pub fn coset_of(&self, g: u16) -> usize {
        self.coset_of[g as usize]
    }

    pub fn coset_mul(&self, a: usize, b: usize) -> usize {
        self.coset_mul[a][b]
    }

    /// The central factor exponent: representatives satisfy
    /// `w_a w_b = z^(factor_exp(a,b)) w_(ab)`.
    pub fn factor_exp(&self, a: usize, b: usize) -> usize {
        self.exps[a][b]
    }

    /// The cocycle for the block of central character `i`: the character
    /// value of the central factor.
    pub fn cocycle(&self, i: usize, a: usize, b: usize) -> CycNum {
        let mut v = CycNum::one();
        let omega = self.group.centre_scalar();
        for _ in 0..(i * self.exps[a][b]) % self.group.centre_order() {
            v = v.mul(omega);
        }
        v
    }

    /// The 2-cocycle identity `f(a,b) f(ab,c) = f(b,c) f(a,bc)`, checked
    /// over all triples.
    pub fn verify_cocycle_identity(&self, i: usize) -> Result<()> {
        let nq = self.order();
        for a in 0..nq {
            for b in 0..nq {
                for c in 0..nq {
                    let lhs = self.cocycle(i, a, b).mul(&self.cocycle(i, self.coset_mul[a][b], c));
                    let rhs = self.cocycle(i, b, c).mul(&self.cocycle(i, a, self.coset_mul[b][c]));
                    if lhs != rhs {
                        return Err(Error::ConstructionInvariantViolated(format!(
                            "cocycle identity fails at ({},{},{}) for character {}",
                            a, b, c, i
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The block `e_i C W` is the twisted group algebra of the quotient:
    /// products of the basis `w_a e_i` reproduce the cocycle exactly.
    pub fn verify_block_is_twisted_algebra(
        &self,
        i: usize,
        idempotents: &[GroupAlgebraElement],
    ) -> Result<()> {
        let ei = &idempotents[i];
        let nq = self.order();
        let basis: Vec<GroupAlgebraElement> = (0..nq)
            .map(|a| {
                GroupAlgebraElement::from_element(self.group.clone(), self.transversal[a]).mul(ei)
            })
            .collect();
        for a in 0..nq {
            for b in 0..nq {
                let prod = basis[a].mul(&basis[b]);
                let expect = basis[self.coset_mul[a][b]]
                    .scale(&Scalar::from_cyc(self.cocycle(i, a, b)));
                if prod != expect {
                    return Err(Error::ConstructionInvariantViolated(format!(
                        "block product at ({},{}) does not match the cocycle",
                        a, b
                    )));
                }
            }
        }
        Ok(())
    }

    /// Changing the transversal rescales the cocycle by the coboundary of
    /// the function recording the central shifts:
    /// `f'(a,b) = f(a,b) * alpha(b) alpha(ab)^(-1) alpha(a)` where
    /// `alpha(a)` is the character of the shift at `a`. Verified against
    /// the cocycle computed directly from the other transversal.
    pub fn verify_coboundary_relation(&self, other: &CentralQuotient, i: usize) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::ContextMismatch);
        }
        let nq = self.order();
        let zc = self.group.centre_order();
        let omega = self.group.centre_scalar();
        let chi = |e: usize| -> CycNum {
            let mut v = CycNum::one();
            for _ in 0..(i * e) % zc {
                v = v.mul(omega);
            }
            v
        };
        // shift exponents: other.rep(of same coset) = z^shift * self.rep
        let mut shift = vec![0usize; nq];
        let z0 = self.group.centre_generator();
        for a in 0..nq {
            let my_rep = self.transversal[a];
            let their_rep = other.transversal[other.coset_of(my_rep)];
            let mut z = self.group.identity();
            let mut found = None;
            for k in 0..zc {
                if self.group.mul(z, my_rep) == their_rep {
                    found = Some(k);
                    break;
                }
                z = self.group.mul(z, z0);
            }
            shift[a] =
                found.ok_or_else(|| Error::NotATransversal("representatives differ by more than the centre".into()))?;
        }
        for a in 0..nq {
            for b in 0..nq {
                let ab = self.coset_mul[a][b];
                // translate our coset labels to the other quotient's labels
                let oa = other.coset_of(self.transversal[a]);
                let ob = other.coset_of(self.transversal[b]);
                let direct = other.cocycle(i, oa, ob);
                let boundary = chi(shift[b])
                    .mul(&chi(shift[ab]).inv().expect("root of unity"))
                    .mul(&chi(shift[a]));
                let predicted = self.cocycle(i, a, b).mul(&boundary);
                if direct != predicted {
                    return Err(Error::ConstructionInvariantViolated(format!(
                        "coboundary relation fails at ({},{})",
                        a, b
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn build(name: &str) -> Arc<GroupData> {
        let spec: GroupSpec = name.parse().unwrap();
        Arc::new(GroupData::build(&spec).unwrap())
    }

    #[test]
    fn centre_idempotents_for_small_groups() {
        for (name, zc) in [("D3", 1), ("D4", 2), ("B2", 2), ("G3,1,2", 3)] {
            let g = build(name);
            let idems = centre_idempotents(&g).unwrap();
            assert_eq!(idems.len(), zc, "{}", name);
        }
    }

    #[test]
    fn rotation_idempotents_diagonalize_the_rotation() {
        let g = build("D5");
        let a = dihedral_rotation_idempotents(&g).unwrap();
        let r1 = GroupAlgebraElement::from_element(g.clone(), g.by_name("r1").unwrap());
        let s1 = GroupAlgebraElement::from_element(g.clone(), g.by_name("s1").unwrap());
        for (i, ai) in a.iter().enumerate() {
            // r a_i = zeta^i a_i
            let lhs = r1.mul(ai);
            let rhs = ai.scale(&Scalar::from_cyc(CycNum::zeta(5, i as i64)));
            assert_eq!(lhs, rhs, "rotation eigenvalue at {}", i);
            // s1 a_i = a_(-i) s1
            let lhs2 = s1.mul(ai);
            let rhs2 = a[(5 - i) % 5].mul(&s1);
            assert_eq!(lhs2, rhs2, "mirror swap at {}", i);
            // idempotency and orthogonality
            for (j, aj) in a.iter().enumerate() {
                let p = ai.mul(aj);
                if i == j {
                    assert_eq!(p, *ai);
                } else {
                    assert!(p.is_zero());
                }
            }
        }
    }

    #[test]
    fn symmetric_and_antisymmetric_combinations() {
        for name in ["D4", "D5", "D6"] {
            let g = build(name);
            let b = dihedral_symmetric_idempotents(&g).unwrap();
            let d = dihedral_antisymmetric_elements(&g).unwrap();
            let l = match g.spec() {
                GroupSpec::Dihedral(l) => *l as usize,
                _ => unreachable!(),
            };
            assert_eq!(b.len(), l / 2 + 1);
            assert_eq!(d.len(), (l - 1) / 2);
            for (i, di) in d.iter().enumerate() {
                // d_i^2 = b_(i+1), d_i b_(i+1) = d_i
                assert_eq!(di.mul(di), b[i + 1], "{} square at {}", name, i);
                assert_eq!(di.mul(&b[i + 1]), *di, "{} absorb at {}", name, i);
            }
            for bi in &b {
                assert_eq!(bi.mul(bi), *bi, "{} symmetric idempotent", name);
            }
        }
    }

    #[test]
    fn quotient_cocycles_check_out() {
        for name in ["D4", "B2", "B3", "G3,1,2"] {
            let g = build(name);
            let q = CentralQuotient::new(g.clone()).unwrap();
            assert_eq!(q.order() * g.centre_order(), g.order(), "{}", name);
            let idems = centre_idempotents(&g).unwrap();
            for i in 0..g.centre_order() {
                q.verify_cocycle_identity(i).unwrap();
                q.verify_block_is_twisted_algebra(i, &idems).unwrap();
            }
        }
    }

    #[test]
    fn trivial_character_gives_trivial_cocycle() {
        let g = build("D4");
        let q = CentralQuotient::new(g.clone()).unwrap();
        for a in 0..q.order() {
            for b in 0..q.order() {
                assert!(q.cocycle(0, a, b).is_one());
            }
        }
    }

    #[test]
    fn changing_transversal_shifts_by_a_coboundary() {
        let g = build("D4");
        let q = CentralQuotient::new(g.clone()).unwrap();
        // shift every representative by the central generator where
        // possible, keeping coset order
        let z0 = g.centre_generator();
        let reps: Vec<u16> = q
            .transversal()
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 1 { g.mul(z0, r) } else { r })
            .collect();
        let q2 = CentralQuotient::with_transversal(g.clone(), reps).unwrap();
        for i in 0..g.centre_order() {
            q2.verify_cocycle_identity(i).unwrap();
            q.verify_coboundary_relation(&q2, i).unwrap();
        }
        // bogus transversal: repeat a representative
        let mut bad = q.transversal().to_vec();
        bad[1] = bad[0];
        assert!(matches!(
            CentralQuotient::with_transversal(g, bad),
            Err(Error::NotATransversal(_))
        ));
    }
}
