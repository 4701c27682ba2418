//! Centres of the invariant subalgebras, computed as exact kernels.
//!
//! The solver is a staged centralizer: a candidate space is cut down one
//! generator at a time, so the cheap conditions (commutators with group
//! elements, whose coefficients are constants) shrink the space before
//! any symbolic condition is imposed. Every reported basis element is
//! re-verified by a direct commutator check against all generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::group_algebra::{centre_idempotents, GroupAlgebraElement};
use crate::linalg::SparseMat;
use crate::pbw::{AlgebraContext, ContextElements, PBWElement, PBWMonomial};
use crate::scalar::Scalar;
use crate::subalgebra::{gl_admissible_words, so_elem, GlCombo};

/// One slice of a centre computation: a label, the kernel dimension, and
/// the printed basis elements.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CentreSlice {
    pub label: String,
    pub dim: usize,
    pub basis: Vec<String>,
}

/// A centre computation over a family of slices.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CentreReport {
    pub group: String,
    pub slices: Vec<CentreSlice>,
    pub total_dim: usize,
}

/// A basis of the joint centralizer of `gens` inside the span of
/// `candidates`: coefficient vectors together with the elements they
/// combine to. Refines one generator at a time and re-verifies the final
/// basis directly.
pub fn centralizer_basis(
    ctx: &Arc<AlgebraContext>,
    candidates: &[PBWElement],
    gens: &[PBWElement],
) -> Result<Vec<(Vec<Scalar>, PBWElement)>> {
    let mut basis: Vec<(Vec<Scalar>, PBWElement)> = Vec::new();
    for (i, cand) in candidates.iter().enumerate() {
        let mut v = vec![Scalar::zero(); candidates.len()];
        v[i] = Scalar::one();
        basis.push((v, cand.clone()));
    }
    for g in gens {
        basis = refine(ctx, basis, g)?;
        if basis.is_empty() {
            break;
        }
    }
    for (_, e) in &basis {
        for g in gens {
            if !e.commutator(g).is_zero() {
                return Err(Error::ConstructionInvariantViolated(
                    "centralizer basis fails a direct commutator re-check".into(),
                ));
            }
        }
    }
    Ok(basis)
}

fn refine(
    ctx: &Arc<AlgebraContext>,
    basis: Vec<(Vec<Scalar>, PBWElement)>,
    g: &PBWElement,
) -> Result<Vec<(Vec<Scalar>, PBWElement)>> {
    if basis.is_empty() {
        return Ok(basis);
    }
    let comms: Vec<PBWElement> = basis.iter().map(|(_, e)| e.commutator(g)).collect();
    let mut columns: BTreeMap<PBWMonomial, usize> = BTreeMap::new();
    for c in &comms {
        for (m, _) in c.terms() {
            let next = columns.len();
            columns.entry(m.clone()).or_insert(next);
        }
    }
    if columns.is_empty() {
        return Ok(basis);
    }
    // kernel of the map (mu_b) -> sum_b mu_b [e_b, g]
    let mut mat = SparseMat::new(basis.len());
    let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); columns.len()];
    for (b, c) in comms.iter().enumerate() {
        for (m, coeff) in c.terms() {
            rows[columns[m]].insert(b, coeff.clone());
        }
    }
    for row in rows {
        mat.push_row(row);
    }
    let kernel = mat.kernel();
    let mut out = Vec::with_capacity(kernel.len());
    for mu in kernel {
        let mut vec = vec![Scalar::zero(); basis[0].0.len()];
        let mut elem = ctx.zero();
        for (b, coeff) in mu.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (slot, v) in vec.iter_mut().zip(basis[b].0.iter()) {
                *slot = slot.add(&v.mul(coeff));
            }
            elem = elem.add(&basis[b].1.scale(coeff));
        }
        out.push((vec, elem));
    }
    Ok(out)
}

/// Expected slice dimension of the centre of the rank-two antisymmetric
/// subalgebra over the dihedral group of order `2 l`, by generator
/// degree: rotations paired with their inverses, with the sign of the
/// pairing governed by the parity of the degree.
pub fn so2_expected_dim(l: u32, degree: usize) -> usize {
    let half = (l / 2) as usize;
    if degree % 2 == 0 {
        half + 1
    } else if l % 2 == 0 {
        half - 1
    } else {
        half
    }
}

/// Centre slices of the antisymmetric subalgebra of a dihedral group,
/// one slice per generator degree `0..=max_degree`. A slice searches the
/// span of `M^j w` over all group elements, against the generator set
/// `{M, r1, s1}`.
pub fn dihedral_so2_centre(
    ctx: &Arc<AlgebraContext>,
    max_degree: usize,
) -> Result<CentreReport> {
    let g = ctx.group().clone();
    let GroupSpec::Dihedral(_) = g.spec() else {
        return Err(Error::UnsupportedSpec(
            "antisymmetric centre slices need a dihedral group".into(),
        ));
    };
    let m_elem = so_elem(ctx, 0, 1);
    let r1 = ctx.grp(g.by_name("r1").expect("dihedral rotation generator"));
    let s1 = ctx.grp(g.by_name("s1").expect("dihedral mirror generator"));
    let gens = vec![m_elem.clone(), r1, s1];
    let mut slices = Vec::new();
    let mut total = 0;
    let mut power = ctx.one();
    for j in 0..=max_degree {
        let candidates: Vec<PBWElement> = (0..g.order() as u16)
            .map(|w| power.mul(&ctx.grp(w)))
            .collect();
        let basis = centralizer_basis(ctx, &candidates, &gens)?;
        total += basis.len();
        slices.push(CentreSlice {
            label: format!("degree {}", j),
            dim: basis.len(),
            basis: basis.iter().map(|(_, e)| format!("{}", e)).collect(),
        });
        power = power.mul(&m_elem);
    }
    Ok(CentreReport {
        group: g.spec().to_string(),
        slices,
        total_dim: total,
    })
}

fn lift_group_algebra(ctx: &Arc<AlgebraContext>, e: &GroupAlgebraElement) -> PBWElement {
    let mut acc = ctx.zero();
    for (w, coeff) in e.terms() {
        acc = acc.add(&ctx.grp(*w).scale(coeff));
    }
    acc
}

/// Result of a matrix-family centre computation through one filtration
/// bound.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GlCentreReport {
    pub report: CentreReport,
    /// Dimension predicted by the Euler-and-central-idempotent model.
    pub expected_dim: usize,
    /// Whether the computed centre equals the span of
    /// `eu^k * (central idempotent)`.
    pub matches_euler_model: bool,
}

/// Centre of the matrix-family subalgebra inside its filtration slice
/// `<= 2 * max_half_degree`, with generic (symbolic or non-zero) `t`.
/// Compares the kernel against the span of powers of the Euler element
/// times the central idempotents of the group.
pub fn gl_centre(
    ctx: &Arc<AlgebraContext>,
    max_half_degree: usize,
) -> Result<GlCentreReport> {
    let g = ctx.group().clone();
    let n = g.rank();
    // candidates: the admissible monomial basis times group elements
    let mut candidates = Vec::new();
    for m in 0..=max_half_degree {
        for word in gl_admissible_words(n, m) {
            let mut combo = GlCombo::unit(ctx);
            for &(i, j) in &word {
                combo = combo.mul(&GlCombo::generator(ctx, i as usize, j as usize));
            }
            let base = combo.expand();
            for w in 0..g.order() as u16 {
                candidates.push(base.mul(&ctx.grp(w)));
            }
        }
    }
    // generators: group elements first so the constant-coefficient
    // conditions cut the space before the symbolic ones
    let mut gens: Vec<PBWElement> = Vec::new();
    for name in g.info().generators.iter() {
        gens.push(ctx.grp(g.by_name(name).expect("generator name resolves")));
    }
    for i in 0..n {
        for j in 0..n {
            gens.push(crate::subalgebra::gl_elem(ctx, i, j));
        }
    }
    let basis = centralizer_basis(ctx, &candidates, &gens)?;

    // model: eu^k times each central idempotent of the group algebra
    let idempotents = centre_idempotents(&g)?;
    let eu = ctx.euler();
    let mut model: Vec<PBWElement> = Vec::new();
    for k in 0..=max_half_degree {
        let p = eu.pow(k as u32);
        for e in &idempotents {
            model.push(p.mul(&lift_group_algebra(ctx, e)));
        }
    }
    let expected = model.len();
    let matches = spans_agree(
        &basis.iter().map(|(_, e)| e.clone()).collect::<Vec<_>>(),
        &model,
    );
    let report = CentreReport {
        group: g.spec().to_string(),
        slices: vec![CentreSlice {
            label: format!("filtration <= {}", 2 * max_half_degree),
            dim: basis.len(),
            basis: basis.iter().map(|(_, e)| format!("{}", e)).collect(),
        }],
        total_dim: basis.len(),
    };
    Ok(GlCentreReport {
        report,
        expected_dim: expected,
        matches_euler_model: matches,
    })
}

/// Exact equality of the spans of two element families.
pub fn spans_agree(a: &[PBWElement], b: &[PBWElement]) -> bool {
    let mut columns: BTreeMap<PBWMonomial, usize> = BTreeMap::new();
    for e in a.iter().chain(b.iter()) {
        for (m, _) in e.terms() {
            let next = columns.len();
            columns.entry(m.clone()).or_insert(next);
        }
    }
    let to_mat = |rows: &[PBWElement]| {
        let mut mat = SparseMat::new(columns.len());
        for e in rows {
            mat.push_row(e.terms().map(|(m, c)| (columns[m], c.clone())));
        }
        mat
    };
    let ra = to_mat(a).rank();
    let rb = to_mat(b).rank();
    if ra != rb {
        return false;
    }
    let mut all: Vec<PBWElement> = a.to_vec();
    all.extend(b.iter().cloned());
    to_mat(&all).rank() == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupData;

    fn ctx(name: &str) -> Arc<AlgebraContext> {
        let spec: GroupSpec = name.parse().unwrap();
        AlgebraContext::new(Arc::new(GroupData::build(&spec).unwrap()))
    }

    fn ctx_numeric(name: &str) -> Arc<AlgebraContext> {
        let spec: GroupSpec = name.parse().unwrap();
        let g = Arc::new(GroupData::build(&spec).unwrap());
        let c = (0..g.num_classes())
            .map(|k| Scalar::from_int(k as i64 + 2))
            .collect();
        AlgebraContext::with_parameters(g, Scalar::one(), c).unwrap()
    }

    #[test]
    fn dihedral_antisymmetric_centre_dimensions() {
        let expected: [(&str, u32, Vec<usize>); 4] = [
            ("D3", 3, vec![2, 1, 2, 1, 2]),
            ("D4", 4, vec![3, 1, 3, 1, 3]),
            ("D5", 5, vec![3, 2, 3, 2]),
            ("D6", 6, vec![4, 2, 4, 2]),
        ];
        for (name, l, dims) in expected {
            let h = ctx(name);
            let report = dihedral_so2_centre(&h, dims.len() - 1).unwrap();
            let got: Vec<usize> = report.slices.iter().map(|s| s.dim).collect();
            assert_eq!(got, dims, "{}", name);
            for (j, d) in dims.iter().enumerate() {
                assert_eq!(so2_expected_dim(l, j), *d, "{} degree {}", name, j);
            }
        }
    }

    #[test]
    fn dihedral_centre_is_parameter_independent() {
        let symbolic = dihedral_so2_centre(&ctx("D3"), 2).unwrap();
        let numeric = dihedral_so2_centre(&ctx_numeric("D3"), 2).unwrap();
        let a: Vec<usize> = symbolic.slices.iter().map(|s| s.dim).collect();
        let b: Vec<usize> = numeric.slices.iter().map(|s| s.dim).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn degree_zero_centre_slice_contains_identity() {
        let h = ctx("D3");
        let report = dihedral_so2_centre(&h, 0).unwrap();
        assert_eq!(report.slices[0].dim, 2);
        // the identity is central; it must lie in the computed span
        let candidates: Vec<PBWElement> = (0..h.group().order() as u16)
            .map(|w| h.grp(w))
            .collect();
        let gens = vec![
            so_elem(&h, 0, 1),
            h.grp(h.group().by_name("r1").unwrap()),
            h.grp(h.group().by_name("s1").unwrap()),
        ];
        let basis = centralizer_basis(&h, &candidates, &gens).unwrap();
        let elems: Vec<PBWElement> = basis.iter().map(|(_, e)| e.clone()).collect();
        let mut with_one = elems.clone();
        with_one.push(h.one());
        assert!(spans_agree(&elems, &with_one));
    }

    #[test]
    fn matrix_family_centre_matches_euler_model() {
        let h = ctx("D3");
        let result = gl_centre(&h, 3).unwrap();
        assert_eq!(result.expected_dim, 4);
        assert_eq!(result.report.total_dim, 4);
        assert!(result.matches_euler_model);
    }

    #[test]
    fn matrix_family_centre_sees_the_group_centre() {
        // order eight dihedral group: two central idempotents double the
        // centre of the subalgebra
        let h = ctx("D4");
        let result = gl_centre(&h, 3).unwrap();
        assert_eq!(result.expected_dim, 8);
        assert_eq!(result.report.total_dim, 8);
        assert!(result.matches_euler_model);
    }
}
