//! Integer chain complexes, Smith normal form and homology with torsion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{rank_over, Ring};
use crate::mask::VertexMask;

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    t.set(c, r, v.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Rank over a coefficient ring (`Z` gives the free rank).
    pub fn rank_over(&self, ring: Ring) -> usize {
        rank_over(ring, self.rows, self.cols, |r, c| self.get(r, c).clone())
    }
}

/// Output of [`smith_normal_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Non-zero diagonal entries, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

/// Smith normal form diagonal of `a`.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (diag, _) = smith_with_columns(a, false);
    SmithForm {
        rank: diag.len(),
        invariant_factors: diag,
    }
}

/// Basis of the integer kernel lattice of `a`, as columns of a matrix.
pub fn integer_kernel(a: &IntegerMatrix) -> IntegerMatrix {
    let (diag, v) = smith_with_columns(a, true);
    let v = v.expect("column transform requested");
    let rank = diag.len();
    let mut out = IntegerMatrix::zeros(a.cols, a.cols - rank);
    for (k, c) in (rank..a.cols).enumerate() {
        for r in 0..a.cols {
            out.set(r, k, v.get(r, c).clone());
        }
    }
    out
}

fn smith_with_columns(a: &IntegerMatrix, track: bool) -> (Vec<BigInt>, Option<IntegerMatrix>) {
    // Machine-word fast path; restart with big integers on overflow.
    let small: Option<Vec<i64>> = a.data.iter().map(|x| x.to_i64()).collect();
    if let Some(data) = small {
        let mut work = Work::<i64>::new(a.rows, a.cols, data, track);
        if work.reduce().is_some() {
            return work.finish();
        }
    }
    let mut work = Work::<BigInt>::new(a.rows, a.cols, a.data.clone(), track);
    work.reduce().expect("big integers do not overflow");
    work.finish()
}

trait SnfInt: Clone + PartialEq + std::fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn div_trunc(&self, d: &Self) -> Option<Self>;
    /// `self - q * x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn add(&self, x: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn is_negative(&self) -> bool;
    fn divides(&self, x: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl SnfInt for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn div_trunc(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn add(&self, x: &Self) -> Option<Self> {
        self.checked_add(*x)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn divides(&self, x: &Self) -> bool {
        x % self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfInt for BigInt {
    fn nil() -> Self {
        BigInt::zero()
    }
    fn unit() -> Self {
        BigInt::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn div_trunc(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn add(&self, x: &Self) -> Option<Self> {
        Some(self + x)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn divides(&self, x: &Self) -> bool {
        x.is_multiple_of(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Work<T: SnfInt> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    v: Option<Vec<T>>,
    diag: Vec<T>,
}

impl<T: SnfInt> Work<T> {
    fn new(rows: usize, cols: usize, a: Vec<T>, track: bool) -> Self {
        let v = track.then(|| {
            let mut v = vec![T::nil(); cols * cols];
            for k in 0..cols {
                v[k * cols + k] = T::unit();
            }
            v
        });
        Work {
            rows,
            cols,
            a,
            v,
            diag: Vec::new(),
        }
    }

    fn at(&self, r: usize, c: usize) -> &T {
        &self.a[r * self.cols + c]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.a.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
        if let Some(v) = &mut self.v {
            for r in 0..self.cols {
                v.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row_i -= q * row_t
    fn row_op(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        for c in t..self.cols {
            let x = self.at(t, c).clone();
            if x.is_nil() {
                continue;
            }
            let idx = i * self.cols + c;
            self.a[idx] = self.a[idx].sub_mul(q, &x)?;
        }
        Some(())
    }

    /// col_j -= q * col_t
    fn col_op(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        for r in t..self.rows {
            let x = self.at(r, t).clone();
            if x.is_nil() {
                continue;
            }
            let idx = r * self.cols + j;
            self.a[idx] = self.a[idx].sub_mul(q, &x)?;
        }
        if let Some(v) = &mut self.v {
            let n = self.cols;
            for r in 0..n {
                let x = v[r * n + t].clone();
                if x.is_nil() {
                    continue;
                }
                v[r * n + j] = v[r * n + j].sub_mul(q, &x)?;
            }
        }
        Some(())
    }

    /// row_t += row_i
    fn add_row(&mut self, t: usize, i: usize) -> Option<()> {
        for c in t..self.cols {
            let x = self.at(i, c).clone();
            if x.is_nil() {
                continue;
            }
            let idx = t * self.cols + c;
            self.a[idx] = self.a[idx].add(&x)?;
        }
        Some(())
    }

    /// Smallest non-zero entry in the trailing block, stopping early at a unit.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let x = self.at(r, c);
                if x.is_nil() {
                    continue;
                }
                if x.is_unit() {
                    return Some((r, c));
                }
                match best {
                    Some((br, bc)) if !x.abs_lt(self.at(br, bc)) => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> Option<()> {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pr, pc)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.at(i, t).is_nil() {
                        continue;
                    }
                    let q = self.at(i, t).div_trunc(self.at(t, t))?;
                    self.row_op(i, t, &q)?;
                    if !self.at(i, t).is_nil() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if self.at(t, j).is_nil() {
                        continue;
                    }
                    let q = self.at(t, j).div_trunc(self.at(t, t))?;
                    self.col_op(j, t, &q)?;
                    if !self.at(t, j).is_nil() {
                        clean = false;
                    }
                }
                if !clean {
                    // move the smallest remainder in row/column t to the pivot
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        let x = self.at(i, t);
                        if !x.is_nil() && x.abs_lt(self.at(best.0, best.1)) {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = self.at(t, j);
                        if !x.is_nil() && x.abs_lt(self.at(best.0, best.1)) {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let p = self.at(t, t).clone();
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !p.divides(self.at(i, j)))
                });
                match offender {
                    Some(i) => self.add_row(t, i)?,
                    None => break,
                }
            }
            let p = self.at(t, t).clone();
            self.diag.push(if p.is_negative() { p.neg()? } else { p });
        }
        Some(())
    }

    fn finish(self) -> (Vec<BigInt>, Option<IntegerMatrix>) {
        let diag = self.diag.iter().map(SnfInt::to_big).collect();
        let v = self.v.map(|v| IntegerMatrix {
            rows: self.cols,
            cols: self.cols,
            data: v.iter().map(SnfInt::to_big).collect(),
        });
        (diag, v)
    }
}

/// Direction of the differentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grading {
    /// `d: C_n → C_{n-1}`
    Chain,
    /// `δ: C^n → C^{n+1}`
    Cochain,
}

/// A bounded complex of free abelian groups with integer differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerChainComplex {
    grading: Grading,
    min_degree: i32,
    labels: Vec<Vec<u128>>,
    // outgoing[k] is the differential leaving degree min_degree + k
    outgoing: Vec<IntegerMatrix>,
}

impl IntegerChainComplex {
    /// Checks dimensions and `d ∘ d = 0`.
    pub fn new(
        grading: Grading,
        min_degree: i32,
        labels: Vec<Vec<u128>>,
        outgoing: Vec<IntegerMatrix>,
    ) -> Result<Self> {
        let c = IntegerChainComplex {
            grading,
            min_degree,
            labels,
            outgoing,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        if self.labels.len() != self.outgoing.len() {
            return Err(Error::DimensionMismatch(self.min_degree));
        }
        for n in self.degrees() {
            let d = self.outgoing_map(n);
            if d.cols() != self.dim(n) || d.rows() != self.dim(self.target(n)) {
                return Err(Error::DimensionMismatch(n));
            }
        }
        for n in self.degrees() {
            let t = self.target(n);
            if self.dim(t) == 0 || self.dim(self.target(t)) == 0 {
                continue;
            }
            if !self.outgoing_map(t).mul(self.outgoing_map(n)).is_zero() {
                return Err(Error::NotAComplex(n));
            }
        }
        Ok(())
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i32 {
        self.min_degree + self.labels.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.min_degree..=self.max_degree()
    }

    fn index(&self, n: i32) -> Option<usize> {
        (n >= self.min_degree && n <= self.max_degree()).then(|| (n - self.min_degree) as usize)
    }

    pub fn dim(&self, n: i32) -> usize {
        self.index(n).map_or(0, |k| self.labels[k].len())
    }

    pub fn labels(&self, n: i32) -> &[u128] {
        self.index(n).map_or(&[], |k| &self.labels[k])
    }

    fn target(&self, n: i32) -> i32 {
        match self.grading {
            Grading::Chain => n - 1,
            Grading::Cochain => n + 1,
        }
    }

    fn source(&self, n: i32) -> i32 {
        match self.grading {
            Grading::Chain => n + 1,
            Grading::Cochain => n - 1,
        }
    }

    /// Differential leaving degree `n` (a zero matrix outside the range).
    pub fn outgoing_map(&self, n: i32) -> &IntegerMatrix {
        static EMPTY: std::sync::OnceLock<IntegerMatrix> = std::sync::OnceLock::new();
        match self.index(n) {
            Some(k) => &self.outgoing[k],
            None => EMPTY.get_or_init(|| IntegerMatrix::zeros(0, 0)),
        }
    }

    fn outgoing_owned(&self, n: i32) -> IntegerMatrix {
        match self.index(n) {
            Some(k) => self.outgoing[k].clone(),
            None => IntegerMatrix::zeros(self.dim(self.target(n)), 0),
        }
    }

    /// Differential arriving at degree `n`.
    pub fn incoming_map(&self, n: i32) -> IntegerMatrix {
        let s = self.source(n);
        if self.index(s).is_some() {
            self.outgoing[self.index(s).unwrap()].clone()
        } else {
            IntegerMatrix::zeros(self.dim(n), 0)
        }
    }

    /// The dual complex: same groups, transposed differentials, opposite grading.
    pub fn transpose(&self) -> Self {
        let grading = match self.grading {
            Grading::Chain => Grading::Cochain,
            Grading::Cochain => Grading::Chain,
        };
        let outgoing = self
            .degrees()
            .map(|n| {
                let m = self.incoming_map(n);
                if m.cols() == 0 {
                    IntegerMatrix::zeros(0, self.dim(n))
                } else {
                    m.transpose()
                }
            })
            .collect();
        let out = IntegerChainComplex {
            grading,
            min_degree: self.min_degree,
            labels: self.labels.clone(),
            outgoing,
        };
        debug_assert!(out.validate().is_ok());
        out
    }

    /// Integral homology (or cohomology for a cochain complex).
    pub fn homology(&self) -> HomologySummary {
        let ranks: Vec<usize> = self
            .degrees()
            .map(|n| smith_normal_form(self.outgoing_map(n)).rank)
            .collect();
        let degrees = self
            .degrees()
            .map(|n| {
                let out_rank = ranks[(n - self.min_degree) as usize];
                let incoming = self.incoming_map(n);
                let snf = smith_normal_form(&incoming);
                let torsion: Vec<BigInt> = snf
                    .invariant_factors
                    .into_iter()
                    .filter(|d| !d.is_one())
                    .collect();
                let betti = self.dim(n) - out_rank - snf.rank;
                (n, DegreeHomology { betti, torsion })
            })
            .collect();
        HomologySummary { degrees }
    }

    /// Dimensions of (co)homology with field coefficients; for `Z` the free ranks.
    pub fn dims_over(&self, ring: Ring) -> BTreeMap<i32, usize> {
        if ring == Ring::Integers {
            return self
                .homology()
                .degrees
                .into_iter()
                .map(|(n, h)| (n, h.betti))
                .collect();
        }
        let ranks: Vec<usize> = self
            .degrees()
            .map(|n| self.outgoing_map(n).rank_over(ring))
            .collect();
        self.degrees()
            .map(|n| {
                let out = ranks[(n - self.min_degree) as usize];
                let s = self.source(n);
                let inc = self.index(s).map_or(0, |k| ranks[k]);
                (n, self.dim(n) - out - inc)
            })
            .collect()
    }

    /// Every composite of consecutive differentials vanishes.
    pub fn is_complex(&self) -> bool {
        self.validate().is_ok()
    }
}

/// Writes integers as JSON numbers when they fit in `i64`, else as strings.
pub(crate) fn serialize_integers<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

pub(crate) fn serialize_torsion_map<S: serde::Serializer>(
    m: &BTreeMap<i32, Vec<BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    struct Row<'a>(&'a [BigInt]);
    impl Serialize for Row<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            serialize_integers(self.0, s)
        }
    }
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &Row(v))?;
    }
    map.end()
}

/// Homology in one degree: free rank and invariant factors of the torsion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub betti: usize,
    #[serde(serialize_with = "serialize_integers")]
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub degrees: BTreeMap<i32, DegreeHomology>,
}

impl HomologySummary {
    /// Reduced homology of `S^k` (`k = -1` is the empty sphere).
    pub fn sphere(k: i32) -> Self {
        let mut degrees = BTreeMap::new();
        degrees.insert(
            k,
            DegreeHomology {
                betti: 1,
                torsion: vec![],
            },
        );
        HomologySummary { degrees }
    }

    pub fn betti(&self, n: i32) -> usize {
        self.degrees.get(&n).map_or(0, |h| h.betti)
    }

    pub fn torsion(&self, n: i32) -> &[BigInt] {
        self.degrees.get(&n).map_or(&[], |h| &h.torsion)
    }

    /// Degrees with non-zero homology.
    pub fn nonzero(&self) -> BTreeMap<i32, DegreeHomology> {
        self.degrees
            .iter()
            .filter(|(_, h)| !h.is_zero())
            .map(|(&n, h)| (n, h.clone()))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees.values().all(DegreeHomology::is_zero)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.values().all(|h| h.torsion.is_empty())
    }

    /// Equal as graded groups, ignoring zero degrees.
    pub fn same_groups(&self, other: &Self) -> bool {
        self.nonzero() == other.nonzero()
    }

    pub fn is_sphere(&self, k: i32) -> bool {
        self.same_groups(&Self::sphere(k))
    }

    /// Field dimension in degree `n` for a complex whose homology is `self`,
    /// by the universal coefficient theorem.
    pub fn uct_dim(&self, grading: Grading, n: i32, p: u32) -> usize {
        let p = BigInt::from(p);
        let count = |k: i32| {
            self.torsion(k)
                .iter()
                .filter(|t| t.is_multiple_of(&p))
                .count()
        };
        // chain: H_n ⊗ F_p ⊕ Tor(H_{n-1}, F_p); cochain: H^n ⊗ F_p ⊕ Tor(H^{n+1}, F_p)
        let shifted = match grading {
            Grading::Chain => n - 1,
            Grading::Cochain => n + 1,
        };
        self.betti(n) + count(n) + count(shifted)
    }
}

fn face_label(f: VertexMask) -> u128 {
    f.bits() as u128
}

/// Augmented simplicial chain complex of `K` in degrees `-1..=dim K`.
///
/// The basis in degree `n` is the faces of size `n + 1` in numeric mask order
/// and `∂σ = Σ_k (-1)^k (σ - v_k)` over the vertices `v_0 < v_1 < ..`. The
/// complex is integral; other coefficients are applied when taking homology.
pub fn reduced_chain_complex(k: &SimplicialComplex) -> IntegerChainComplex {
    let top = k.dim();
    let by_size: Vec<Vec<VertexMask>> = (0..=(top + 1) as usize)
        .map(|s| k.faces_of_size(s).collect())
        .collect();
    let outgoing = (0..by_size.len())
        .map(|s| {
            if s == 0 {
                return IntegerMatrix::zeros(0, 1);
            }
            let targets = &by_size[s - 1];
            let mut d = IntegerMatrix::zeros(targets.len(), by_size[s].len());
            for (c, &face) in by_size[s].iter().enumerate() {
                for (pos, v) in face.iter().enumerate() {
                    let r = targets
                        .binary_search(&face.remove(v))
                        .expect("downward closed");
                    d.add_to(r, c, if pos % 2 == 0 { 1 } else { -1 });
                }
            }
            d
        })
        .collect();
    let labels = by_size
        .iter()
        .map(|fs| fs.iter().map(|&f| face_label(f)).collect())
        .collect();
    IntegerChainComplex {
        grading: Grading::Chain,
        min_degree: -1,
        labels,
        outgoing,
    }
}

/// Augmented simplicial cochain complex (the transpose of the chain complex).
pub fn reduced_cochain_complex(k: &SimplicialComplex) -> IntegerChainComplex {
    reduced_chain_complex(k).transpose()
}

pub fn reduced_homology(k: &SimplicialComplex) -> HomologySummary {
    reduced_chain_complex(k).homology()
}

pub fn reduced_cohomology(k: &SimplicialComplex) -> HomologySummary {
    reduced_cochain_complex(k).homology()
}

fn check_subcomplex(sub: &SimplicialComplex, k: &SimplicialComplex) -> Result<()> {
    if sub.ground() != k.ground() {
        return Err(Error::OutOfRange {
            mask: sub.ground(),
            ground: k.ground(),
        });
    }
    match sub.faces().iter().find(|&&f| !k.contains(f)) {
        Some(&f) => Err(Error::NotSubcomplex(f)),
        None => Ok(()),
    }
}

/// Chain-level inclusion `C_n(sub) → C_n(K)` in the bases of
/// [`reduced_chain_complex`].
pub fn induced_inclusion_map(
    sub: &SimplicialComplex,
    k: &SimplicialComplex,
    n: i32,
) -> Result<IntegerMatrix> {
    check_subcomplex(sub, k)?;
    Ok(inclusion_matrix(sub, k, n))
}

fn inclusion_matrix(sub: &SimplicialComplex, k: &SimplicialComplex, n: i32) -> IntegerMatrix {
    if n < -1 {
        return IntegerMatrix::zeros(0, 0);
    }
    let size = (n + 1) as usize;
    let src: Vec<VertexMask> = sub.faces_of_size(size).collect();
    let dst: Vec<VertexMask> = k.faces_of_size(size).collect();
    let mut m = IntegerMatrix::zeros(dst.len(), src.len());
    for (c, f) in src.iter().enumerate() {
        let r = dst.binary_search(f).expect("subcomplex");
        m.set(r, c, BigInt::one());
    }
    m
}

/// Whether an inclusion of complexes induces isomorphisms on integral
/// reduced homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionVerdict {
    /// Per degree: the induced map is an isomorphism.
    pub per_degree: BTreeMap<i32, bool>,
    /// The mapping cone is acyclic.
    pub cone_acyclic: bool,
}

impl InclusionVerdict {
    pub fn is_iso(&self) -> bool {
        self.cone_acyclic && self.per_degree.values().all(|&b| b)
    }

    /// The two routes agree: iso in every degree iff the cone is acyclic.
    pub fn routes_agree(&self) -> bool {
        self.per_degree.values().all(|&b| b) == self.cone_acyclic
    }
}

/// Mapping cone of the inclusion `sub ⊆ K` on reduced chains.
pub fn inclusion_cone(sub: &SimplicialComplex, k: &SimplicialComplex) -> Result<IntegerChainComplex> {
    check_subcomplex(sub, k)?;
    let a = reduced_chain_complex(sub);
    let b = reduced_chain_complex(k);
    let lo = -1;
    let hi = b.max_degree().max(a.max_degree() + 1);
    // Cone_n = A_{n-1} ⊕ B_n, d(x, y) = (-d x, f x + d y)
    let mut labels = Vec::new();
    let mut outgoing = Vec::new();
    for n in lo..=hi {
        let (an, bn) = (a.dim(n - 1), b.dim(n));
        let (at, bt) = (a.dim(n - 2), b.dim(n - 1));
        let mut d = IntegerMatrix::zeros(at + bt, an + bn);
        if an > 0 && at > 0 {
            let da = a.outgoing_owned(n - 1);
            for r in 0..at {
                for c in 0..an {
                    let v = da.get(r, c);
                    if !v.is_zero() {
                        d.set(r, c, -v);
                    }
                }
            }
        }
        if an > 0 && bt > 0 {
            let f = inclusion_matrix(sub, k, n - 1);
            for r in 0..bt {
                for c in 0..an {
                    let v = f.get(r, c);
                    if !v.is_zero() {
                        d.set(at + r, c, v.clone());
                    }
                }
            }
        }
        if bn > 0 && bt > 0 {
            let db = b.outgoing_owned(n);
            for r in 0..bt {
                for c in 0..bn {
                    let v = db.get(r, c);
                    if !v.is_zero() {
                        d.set(at + r, an + c, v.clone());
                    }
                }
            }
        }
        let mut l: Vec<u128> = a.labels(n - 1).to_vec();
        l.extend(b.labels(n).iter().map(|x| x | (1u128 << 127)));
        labels.push(l);
        outgoing.push(d);
    }
    // drop the top dimension if empty
    while labels.len() > 1 && labels.last().is_some_and(Vec::is_empty) {
        labels.pop();
        outgoing.pop();
    }
    IntegerChainComplex::new(Grading::Chain, lo, labels, outgoing)
}

/// Decides per degree whether `sub ⊆ K` induces an isomorphism on integral
/// reduced homology, and separately whether the mapping cone is acyclic.
///
/// Degree `n` is an isomorphism iff `H_n(sub) ≅ H_n(K)` abstractly and the
/// induced map is onto, i.e. `Z_n(sub) + B_n(K) = Z_n(K)`; a surjection
/// between isomorphic finitely generated abelian groups is injective.
pub fn is_homology_iso(sub: &SimplicialComplex, k: &SimplicialComplex) -> Result<InclusionVerdict> {
    let cone = inclusion_cone(sub, k)?;
    let a = reduced_chain_complex(sub);
    let b = reduced_chain_complex(k);
    let ha = a.homology();
    let hb = b.homology();
    let mut per_degree = BTreeMap::new();
    for n in -1..=b.max_degree() {
        let same = ha.degrees.get(&n).cloned().unwrap_or_default()
            == hb.degrees.get(&n).cloned().unwrap_or_default();
        let onto = same && {
            let cycles_sub = integer_kernel(&a.outgoing_owned(n));
            let incl = inclusion_matrix(sub, k, n);
            let embedded = if cycles_sub.cols() == 0 {
                IntegerMatrix::zeros(b.dim(n), 0)
            } else {
                incl.mul(&cycles_sub)
            };
            let gens = embedded.hstack(&b.incoming_map(n));
            let snf = smith_normal_form(&gens);
            let cycle_rank = b.dim(n) - smith_normal_form(&b.outgoing_owned(n)).rank;
            snf.rank == cycle_rank && snf.invariant_factors.iter().all(One::is_one)
        };
        per_degree.insert(n, onto);
    }
    Ok(InclusionVerdict {
        per_degree,
        cone_acyclic: cone.homology().is_acyclic(),
    })
}
