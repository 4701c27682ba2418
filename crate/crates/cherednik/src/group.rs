//! Finite complex reflection groups with exact matrix entries.
//!
//! Two families are built directly: the dihedral groups acting on the
//! plane, and the wreath products of a cyclic group with a symmetric
//! group acting on `C^n` by monomial matrices (`B_n` is the `m = 2`
//! member). Every element is stored as an exact cyclotomic matrix, and
//! construction derives the full multiplication table, the reflections
//! with their root data, the reflection conjugacy classes, and the
//! centre. All structural facts are validated at build time.

use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::DMat;

/// Which group to build.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupSpec {
    /// Symmetries of a regular polygon with the given number of sides,
    /// acting on the plane. Requires at least three sides.
    Dihedral(u32),
    /// The monomial group of n x n matrices whose non-zero entries are
    /// m-th roots of unity, one per row and column. Requires m >= 2.
    Wreath { m: u32, n: u32 },
}

impl GroupSpec {
    /// The dimension of the space the group acts on.
    pub fn rank(&self) -> usize {
        match self {
            GroupSpec::Dihedral(_) => 2,
            GroupSpec::Wreath { n, .. } => *n as usize,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Dihedral(l) => 2 * *l as usize,
            GroupSpec::Wreath { m, n } => {
                let mut f = 1usize;
                for k in 2..=*n as usize {
                    f *= k;
                }
                f * (*m as usize).pow(*n)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Dihedral(l) => write!(f, "D{}", l),
            GroupSpec::Wreath { m: 2, n } => write!(f, "B{}", n),
            GroupSpec::Wreath { m, n } => write!(f, "G({},1,{})", m, n),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let bad = || Error::UnsupportedSpec(format!("unrecognized group name: {}", s));
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('D').or_else(|| s.strip_prefix('d')) {
            let l: u32 = rest.parse().map_err(|_| bad())?;
            if l < 3 {
                return Err(Error::UnsupportedSpec(format!(
                    "dihedral group needs at least 3 sides, got {}",
                    l
                )));
            }
            return Ok(GroupSpec::Dihedral(l));
        }
        if let Some(rest) = s.strip_prefix('B').or_else(|| s.strip_prefix('b')) {
            let n: u32 = rest.parse().map_err(|_| bad())?;
            if n < 1 {
                return Err(bad());
            }
            return Ok(GroupSpec::Wreath { m: 2, n });
        }
        if let Some(rest) = s.strip_prefix('G').or_else(|| s.strip_prefix('g')) {
            let inner = rest.trim_start_matches('(').trim_end_matches(')');
            let parts: Vec<&str> = inner.split(',').map(|p| p.trim()).collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let m: u32 = parts[0].parse().map_err(|_| bad())?;
            let p: u32 = parts[1].parse().map_err(|_| bad())?;
            let n: u32 = parts[2].parse().map_err(|_| bad())?;
            if p != 1 {
                return Err(Error::UnsupportedSpec(format!(
                    "only the G(m,1,n) family is built; got G({},{},{})",
                    m, p, n
                )));
            }
            if m < 2 {
                return Err(Error::UnsupportedSpec(
                    "G(1,1,n) acts non-essentially on C^n and is not built; use a dihedral or B-series group".into(),
                ));
            }
            if n < 1 {
                return Err(bad());
            }
            return Ok(GroupSpec::Wreath { m, n });
        }
        Err(bad())
    }
}

/// A square matrix with exact cyclotomic entries, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    n: usize,
    e: Vec<CycNum>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut e = vec![CycNum::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = CycNum::one();
        }
        Matrix { n, e }
    }

    pub fn from_entries(n: usize, e: Vec<CycNum>) -> Self {
        assert_eq!(e.len(), n * n);
        Matrix { n, e }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.e[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix { n, e: vec![CycNum::zero(); n * n] };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let want_one = i == j;
                let v = self.get(i, j);
                if want_one != v.is_one() && !(want_one && v.is_one()) {
                    if want_one && !v.is_one() {
                        return false;
                    }
                    if !want_one && !v.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Determinant by minor expansion; matrices here are tiny.
    pub fn det(&self) -> CycNum {
        fn rec(n: usize, rows: &[usize], cols: &[usize], m: &Matrix) -> CycNum {
            if n == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            let mut acc = CycNum::zero();
            let mut sign = CycNum::one();
            for (k, &c) in cols.iter().enumerate() {
                let v = m.get(rows[0], c);
                if !v.is_zero() {
                    let sub_rows = &rows[1..];
                    let sub_cols: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != k)
                        .map(|(_, &cc)| cc)
                        .collect();
                    let minor = rec(n - 1, sub_rows, &sub_cols, m);
                    acc = acc.add(&sign.mul(v).mul(&minor));
                }
                sign = sign.neg();
            }
            acc
        }
        let idx: Vec<usize> = (0..self.n).collect();
        rec(self.n, &idx, &idx, self)
    }

    fn key(&self, conductor: u32) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::with_capacity(self.e.len() * 2);
        for v in &self.e {
            out.extend(v.key_at(conductor));
        }
        out
    }
}

/// A reflection together with its root data, normalized so the element
/// acts as `v -> v - alpha(v) alpha_vee`.
#[derive(Clone, Debug)]
pub struct Reflection {
    /// Index into the element table.
    pub elem: u16,
    /// The linear form cutting out the mirror (a row covector).
    pub alpha: Vec<CycNum>,
    /// The direction moved by the reflection (a column vector).
    pub alpha_vee: Vec<CycNum>,
    /// `alpha(alpha_vee)`; equals 2 exactly for real reflections.
    pub pairing: CycNum,
    /// The non-trivial eigenvalue on the reflection representation.
    pub eig: CycNum,
    /// The non-trivial eigenvalue on the dual representation, the inverse
    /// of `eig`.
    pub eig_dual: CycNum,
    /// Conjugacy class of the reflection; indexes the `c` parameters.
    pub class_index: usize,
}

/// Summary facts for reports.
#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub name: String,
    pub order: usize,
    pub rank: usize,
    pub conductor: u32,
    pub reflections: usize,
    pub reflection_classes: usize,
    pub centre_order: usize,
    pub real: bool,
    pub generators: Vec<String>,
}

/// A fully built group: elements, multiplication table, reflection data,
/// classes and centre.
pub struct GroupData {
    spec: GroupSpec,
    n: usize,
    conductor: u32,
    elements: Vec<Matrix>,
    names: Vec<String>,
    name_index: HashMap<String, u16>,
    table: Vec<u16>,
    inv: Vec<u16>,
    reflections: Vec<Reflection>,
    refl_classes: Vec<Vec<usize>>,
    centre: Vec<u16>,
    centre_gen: u16,
    centre_scalar: CycNum,
    dets: Vec<CycNum>,
    real: bool,
    generator_names: Vec<String>,
}

impl GroupData {
    pub fn build(spec: &GroupSpec) -> Result<GroupData> {
        match spec {
            GroupSpec::Dihedral(l) => build_dihedral(*l),
            GroupSpec::Wreath { m, n } => build_wreath(*m, *n),
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn identity(&self) -> u16 {
        0
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.elements.len() + b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn matrix(&self, a: u16) -> &Matrix {
        &self.elements[a as usize]
    }

    pub fn det(&self, a: u16) -> &CycNum {
        &self.dets[a as usize]
    }

    pub fn name(&self, a: u16) -> &str {
        &self.names[a as usize]
    }

    pub fn by_name(&self, name: &str) -> Option<u16> {
        self.name_index.get(name).copied()
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    pub fn num_classes(&self) -> usize {
        self.refl_classes.len()
    }

    pub fn reflection_classes(&self) -> &[Vec<usize>] {
        &self.refl_classes
    }

    pub fn centre_elements(&self) -> &[u16] {
        &self.centre
    }

    pub fn centre_order(&self) -> usize {
        self.centre.len()
    }

    /// A generator of the (cyclic) centre, first in table order.
    pub fn centre_generator(&self) -> u16 {
        self.centre_gen
    }

    /// The scalar by which the centre generator acts.
    pub fn centre_scalar(&self) -> &CycNum {
        &self.centre_scalar
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Coefficients of `w . x_k` over the dual basis: row `k` of the
    /// matrix of the inverse element.
    pub fn x_action(&self, w: u16, k: usize) -> Vec<(usize, CycNum)> {
        let mi = self.matrix(self.inv(w));
        (0..self.n)
            .filter_map(|j| {
                let v = mi.get(k, j);
                if v.is_zero() {
                    None
                } else {
                    Some((j, v.clone()))
                }
            })
            .collect()
    }

    /// Coefficients of `w . y_j` over the basis: column `j` of the matrix.
    pub fn y_action(&self, w: u16, j: usize) -> Vec<(usize, CycNum)> {
        let m = self.matrix(w);
        (0..self.n)
            .filter_map(|i| {
                let v = m.get(i, j);
                if v.is_zero() {
                    None
                } else {
                    Some((i, v.clone()))
                }
            })
            .collect()
    }

    pub fn info(&self) -> GroupInfo {
        GroupInfo {
            name: self.spec.to_string(),
            order: self.order(),
            rank: self.n,
            conductor: self.conductor,
            reflections: self.reflections.len(),
            reflection_classes: self.refl_classes.len(),
            centre_order: self.centre.len(),
            real: self.real,
            generators: self.generator_names.clone(),
        }
    }

    /// Order of an element under the group multiplication table.
    pub fn element_order(&self, a: u16) -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != 0 {
            cur = self.mul(cur, a);
            k += 1;
            assert!(k <= self.order(), "element order exceeds group order");
        }
        k
    }
}

fn build_dihedral(l: u32) -> Result<GroupData> {
    let spec = GroupSpec::Dihedral(l);
    let conductor = num::integer::lcm(4, l);
    let zl = |k: i64| CycNum::zeta(conductor, (conductor / l) as i64 * k);
    let i_unit = CycNum::zeta(4, 1);
    let half = CycNum::from_frac(1, 2);
    let cos = |k: i64| zl(k).add(&zl(-k)).mul(&half);
    let sin = |k: i64| {
        zl(k)
            .sub(&zl(-k))
            .mul(&half)
            .div(&i_unit)
            .expect("i is invertible")
    };
    let mut elements = Vec::with_capacity(2 * l as usize);
    let mut names = Vec::with_capacity(2 * l as usize);
    for k in 0..l as i64 {
        let (c, s) = (cos(k), sin(k));
        elements.push(Matrix::from_entries(
            2,
            vec![c.clone(), s.neg(), s.clone(), c.clone()],
        ));
        names.push(if k == 0 { "e".to_string() } else { format!("r{}", k) });
    }
    for k in 0..l as i64 {
        let (c, s) = (cos(k), sin(k));
        // rotation by k steps composed with the mirror fixing the first axis
        elements.push(Matrix::from_entries(
            2,
            vec![c.clone(), s.clone(), s.clone(), c.neg()],
        ));
        names.push(format!("s{}", k + 1));
    }
    let generator_names = vec![
        if l > 1 { "r1".to_string() } else { "e".to_string() },
        "s1".to_string(),
    ];
    finish(spec, 2, conductor, elements, names, generator_names)
}

fn build_wreath(m: u32, n: u32) -> Result<GroupData> {
    let spec = GroupSpec::Wreath { m, n };
    let nn = n as usize;
    let conductor = m;
    let mut gens: Vec<Matrix> = Vec::new();
    for i in 0..nn.saturating_sub(1) {
        let mut g = Matrix::identity(nn);
        g.set(i, i, CycNum::zero());
        g.set(i + 1, i + 1, CycNum::zero());
        g.set(i, i + 1, CycNum::one());
        g.set(i + 1, i, CycNum::one());
        gens.push(g);
    }
    let mut d = Matrix::identity(nn);
    d.set(0, 0, CycNum::zeta(m, 1));
    gens.push(d);

    let mut elements = vec![Matrix::identity(nn)];
    let mut seen: HashMap<Vec<(BigInt, BigInt)>, u16> = HashMap::new();
    seen.insert(elements[0].key(conductor), 0);
    let mut queue = std::collections::VecDeque::from([0u16]);
    while let Some(idx) = queue.pop_front() {
        for g in &gens {
            let prod = elements[idx as usize].mul(g);
            let key = prod.key(conductor);
            if !seen.contains_key(&key) {
                let new_idx = elements.len() as u16;
                if elements.len() >= u16::MAX as usize {
                    return Err(Error::UnsupportedSpec(format!(
                        "group {} is too large for the element table",
                        spec
                    )));
                }
                seen.insert(key, new_idx);
                elements.push(prod);
                queue.push_back(new_idx);
            }
        }
    }
    if elements.len() != spec.order() {
        return Err(Error::ConstructionInvariantViolated(format!(
            "group {} closed at {} elements, expected {}",
            spec,
            elements.len(),
            spec.order()
        )));
    }
    let names: Vec<String> = (0..elements.len())
        .map(|i| if i == 0 { "e".to_string() } else { format!("g{}", i) })
        .collect();
    let generator_names: Vec<String> = (1..=gens.len()).map(|i| format!("g{}", i)).collect();
    finish(spec, nn, conductor, elements, names, generator_names)
}

fn finish(
    spec: GroupSpec,
    n: usize,
    conductor: u32,
    elements: Vec<Matrix>,
    names: Vec<String>,
    generator_names: Vec<String>,
) -> Result<GroupData> {
    let order = elements.len();
    let fail = |msg: String| Error::ConstructionInvariantViolated(msg);
    if !elements[0].is_identity() {
        return Err(fail("element 0 is not the identity".into()));
    }
    let mut index: HashMap<Vec<(BigInt, BigInt)>, u16> = HashMap::new();
    for (i, m) in elements.iter().enumerate() {
        if index.insert(m.key(conductor), i as u16).is_some() {
            return Err(fail(format!("duplicate element at index {}", i)));
        }
    }
    // Multiplication table from exact matrix products.
    let mut table = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            let prod = elements[a].mul(&elements[b]);
            let idx = index
                .get(&prod.key(conductor))
                .copied()
                .ok_or_else(|| fail(format!("product {}*{} escapes the element set", a, b)))?;
            table[a * order + b] = idx;
        }
    }
    // Inverses.
    let mut inv = vec![u16::MAX; order];
    for a in 0..order {
        for b in 0..order {
            if table[a * order + b] == 0 {
                inv[a] = b as u16;
                break;
            }
        }
        if inv[a] == u16::MAX {
            return Err(fail(format!("element {} has no inverse", a)));
        }
    }
    // Associativity spot check on the table indices.
    let triples: Vec<(usize, usize, usize)> = if order <= 16 {
        (0..order)
            .flat_map(|a| (0..order).flat_map(move |b| (0..order).map(move |c| (a, b, c))))
            .collect()
    } else {
        (0..2000)
            .map(|k| ((7 * k + 1) % order, (13 * k + 2) % order, (29 * k + 3) % order))
            .collect()
    };
    for (a, b, c) in triples {
        let left = table[table[a * order + b] as usize * order + c];
        let right = table[a * order + table[b * order + c] as usize];
        if left != right {
            return Err(fail(format!("associativity fails at ({},{},{})", a, b, c)));
        }
    }
    // Reflections: elements whose fixed space has codimension one.
    let mut reflections = Vec::new();
    for (idx, mat) in elements.iter().enumerate() {
        if idx == 0 {
            continue;
        }
        // R = I - M
        let mut r_rows: Vec<Vec<CycNum>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let delta = if i == j { CycNum::one() } else { CycNum::zero() };
                row.push(delta.sub(mat.get(i, j)));
            }
            r_rows.push(row);
        }
        let rank = DMat::from_rows(r_rows.clone()).rank();
        if rank != 1 {
            continue;
        }
        // Rank one: R = alpha_vee (x) alpha. Anchor at the first non-zero
        // entry in row-major order.
        let (mut i0, mut j0) = (usize::MAX, usize::MAX);
        'outer: for i in 0..n {
            for j in 0..n {
                if !r_rows[i][j].is_zero() {
                    (i0, j0) = (i, j);
                    break 'outer;
                }
            }
        }
        let anchor = r_rows[i0][j0].clone();
        let alpha_vee: Vec<CycNum> = (0..n).map(|i| r_rows[i][j0].clone()).collect();
        let alpha: Vec<CycNum> = (0..n)
            .map(|j| r_rows[i0][j].div(&anchor).expect("anchor is non-zero"))
            .collect();
        for i in 0..n {
            for j in 0..n {
                if r_rows[i][j] != alpha_vee[i].mul(&alpha[j]) {
                    return Err(fail(format!(
                        "element {} has a rank-one defect that does not factor",
                        idx
                    )));
                }
            }
        }
        let pairing = (0..n).fold(CycNum::zero(), |acc, i| {
            acc.add(&alpha[i].mul(&alpha_vee[i]))
        });
        let eig = CycNum::one().sub(&pairing);
        if eig.is_one() || eig.is_zero() {
            return Err(fail(format!("element {} has a degenerate eigenvalue", idx)));
        }
        // M alpha_vee = eig * alpha_vee, exactly.
        for i in 0..n {
            let mut acc = CycNum::zero();
            for j in 0..n {
                acc = acc.add(&mat.get(i, j).mul(&alpha_vee[j]));
            }
            if acc != eig.mul(&alpha_vee[i]) {
                return Err(fail(format!("element {} eigenvector check fails", idx)));
            }
        }
        let eig_dual = eig.inv().expect("root of unity is invertible");
        reflections.push(Reflection {
            elem: idx as u16,
            alpha,
            alpha_vee,
            pairing,
            eig,
            eig_dual,
            class_index: usize::MAX,
        });
    }
    // Conjugacy classes of reflections, ordered by least element index.
    let refl_pos: HashMap<u16, usize> = reflections
        .iter()
        .enumerate()
        .map(|(p, r)| (r.elem, p))
        .collect();
    let mut assigned = vec![false; reflections.len()];
    let mut refl_classes: Vec<Vec<usize>> = Vec::new();
    for p in 0..reflections.len() {
        if assigned[p] {
            continue;
        }
        let mut orbit: Vec<usize> = Vec::new();
        let r_elem = reflections[p].elem;
        let mut members = std::collections::BTreeSet::new();
        for g in 0..order as u16 {
            let conj = table[table[g as usize * order + r_elem as usize] as usize * order
                + inv[g as usize] as usize];
            let pos = *refl_pos
                .get(&conj)
                .ok_or_else(|| fail("conjugate of a reflection is not a reflection".into()))?;
            members.insert(pos);
        }
        for pos in members {
            assigned[pos] = true;
            orbit.push(pos);
        }
        refl_classes.push(orbit);
    }
    refl_classes.sort_by_key(|cls| cls.iter().map(|&p| reflections[p].elem).min());
    for (ci, cls) in refl_classes.iter().enumerate() {
        for &p in cls {
            reflections[p].class_index = ci;
        }
    }
    // Centre: everything commuting with the whole table; must be scalar.
    let mut centre = Vec::new();
    for a in 0..order {
        if (0..order).all(|b| table[a * order + b] == table[b * order + a]) {
            centre.push(a as u16);
        }
    }
    for &z in &centre {
        let m = &elements[z as usize];
        let w = m.get(0, 0).clone();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { w.clone() } else { CycNum::zero() };
                if *m.get(i, j) != want {
                    return Err(fail(format!("central element {} is not scalar", z)));
                }
            }
        }
    }
    let zc = centre.len();
    let mut centre_gen = None;
    let element_order = |a: u16| -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != 0 {
            cur = table[cur as usize * order + a as usize];
            k += 1;
        }
        k
    };
    for &z in &centre {
        if element_order(z) == zc {
            centre_gen = Some(z);
            break;
        }
    }
    let centre_gen =
        centre_gen.ok_or_else(|| fail("centre is not cyclic".into()))?;
    let centre_scalar = elements[centre_gen as usize].get(0, 0).clone();
    let real = elements
        .iter()
        .all(|m| (0..n * n).all(|k| m.get(k / n, k % n).is_real()));
    if real {
        for r in &reflections {
            if r.pairing != CycNum::from_int(2) {
                return Err(fail("real reflection with pairing other than 2".into()));
            }
        }
    }
    let dets: Vec<CycNum> = elements.iter().map(|m| m.det()).collect();
    let name_index: HashMap<String, u16> = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i as u16))
        .collect();
    Ok(GroupData {
        spec,
        n,
        conductor,
        elements,
        names,
        name_index,
        table,
        inv,
        reflections,
        refl_classes,
        centre,
        centre_gen,
        centre_scalar,
        dets,
        real,
        generator_names,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(name: &str) -> GroupData {
        let spec: GroupSpec = name.parse().unwrap();
        GroupData::build(&spec).unwrap()
    }

    #[test]
    fn parses_group_names() {
        assert_eq!("D3".parse::<GroupSpec>().unwrap(), GroupSpec::Dihedral(3));
        assert_eq!(
            "B2".parse::<GroupSpec>().unwrap(),
            GroupSpec::Wreath { m: 2, n: 2 }
        );
        assert_eq!(
            "G3,1,2".parse::<GroupSpec>().unwrap(),
            GroupSpec::Wreath { m: 3, n: 2 }
        );
        assert_eq!(
            "G(3,1,2)".parse::<GroupSpec>().unwrap(),
            GroupSpec::Wreath { m: 3, n: 2 }
        );
        assert!("G1,1,3".parse::<GroupSpec>().is_err());
        assert!("D2".parse::<GroupSpec>().is_err());
        assert!("X5".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn dihedral_three_structure() {
        let g = build("D3");
        assert_eq!(g.order(), 6);
        assert_eq!(g.conductor(), 12);
        assert_eq!(g.reflections().len(), 3);
        assert_eq!(g.num_classes(), 1);
        assert_eq!(g.centre_order(), 1);
        assert!(g.is_real());
        // the axis mirror: fixes e1, negates e2
        let s1 = g.by_name("s1").unwrap();
        let r = g
            .reflections()
            .iter()
            .find(|r| r.elem == s1)
            .expect("s1 is a reflection");
        assert_eq!(r.alpha, vec![CycNum::zero(), CycNum::one()]);
        assert_eq!(r.alpha_vee, vec![CycNum::zero(), CycNum::from_int(2)]);
        assert_eq!(r.pairing, CycNum::from_int(2));
        assert_eq!(r.eig, CycNum::from_int(-1));
    }

    #[test]
    fn dihedral_even_has_two_classes() {
        for (name, order, zc) in [("D4", 8, 2), ("D6", 12, 2)] {
            let g = build(name);
            assert_eq!(g.order(), order);
            assert_eq!(g.num_classes(), 2);
            assert_eq!(g.centre_order(), zc);
            // axis mirrors come first in table order
            let s1 = g.by_name("s1").unwrap();
            let cls0 = &g.reflection_classes()[0];
            assert!(cls0.iter().any(|&p| g.reflections()[p].elem == s1));
        }
        let g5 = build("D5");
        assert_eq!(g5.order(), 10);
        assert_eq!(g5.num_classes(), 1);
        assert_eq!(g5.centre_order(), 1);
        assert_eq!(g5.conductor(), 20);
    }

    #[test]
    fn hyperoctahedral_structure() {
        let b2 = build("B2");
        assert_eq!(b2.order(), 8);
        assert_eq!(b2.conductor(), 2);
        assert_eq!(b2.reflections().len(), 4);
        assert_eq!(b2.num_classes(), 2);
        assert_eq!(b2.centre_order(), 2);
        assert!(b2.is_real());
        let b3 = build("B3");
        assert_eq!(b3.order(), 48);
        assert_eq!(b3.reflections().len(), 9);
        assert_eq!(b3.num_classes(), 2);
        assert_eq!(b3.centre_order(), 2);
    }

    #[test]
    fn cyclic_wreath_structure() {
        let g = build("G3,1,1");
        assert_eq!(g.order(), 3);
        assert_eq!(g.reflections().len(), 2);
        assert_eq!(g.num_classes(), 2);
        assert_eq!(g.centre_order(), 3);
        assert!(!g.is_real());
        let g2 = build("G3,1,2");
        assert_eq!(g2.order(), 18);
        assert_eq!(g2.reflections().len(), 7);
        assert_eq!(g2.num_classes(), 3);
        assert_eq!(g2.centre_order(), 3);
        // centre generator acts by a primitive cube root of unity
        let w = g2.centre_scalar();
        assert!(!w.is_one());
        let mut p = w.clone();
        p = p.mul(w).mul(w);
        assert!(p.is_one());
    }

    #[test]
    fn group_axioms_via_table() {
        for name in ["D3", "B2", "G3,1,2"] {
            let g = build(name);
            let n = g.order() as u16;
            for a in 0..n {
                assert_eq!(g.mul(a, g.identity()), a);
                assert_eq!(g.mul(g.identity(), a), a);
                assert_eq!(g.mul(a, g.inv(a)), g.identity());
            }
        }
    }

    #[test]
    fn actions_are_mutually_dual() {
        // <w.x_k, w.y_j> = delta_kj for every element
        for name in ["D3", "B2", "G3,1,2"] {
            let g = build(name);
            for w in 0..g.order() as u16 {
                for k in 0..g.rank() {
                    for j in 0..g.rank() {
                        let xv = g.x_action(w, k);
                        let yv = g.y_action(w, j);
                        let mut acc = CycNum::zero();
                        for (xi, xc) in &xv {
                            for (yi, yc) in &yv {
                                if xi == yi {
                                    acc = acc.add(&xc.mul(yc));
                                }
                            }
                        }
                        let want = if k == j { CycNum::one() } else { CycNum::zero() };
                        assert_eq!(acc, want, "{} w={} k={} j={}", name, w, k, j);
                    }
                }
            }
        }
    }

    #[test]
    fn determinants_are_roots_of_unity() {
        let g = build("G3,1,2");
        for w in 0..g.order() as u16 {
            let d = g.det(w);
            let mut p = CycNum::one();
            for _ in 0..6 {
                p = p.mul(d);
            }
            assert!(p.is_one());
        }
        let d3 = build("D3");
        for r in d3.reflections() {
            assert_eq!(*d3.det(r.elem), CycNum::from_int(-1));
        }
    }
}
