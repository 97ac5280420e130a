//! The cellular cochain algebra of the moment-angle complex `Z_K` and the
//! additive decompositions of its cohomology.
//!
//! A cell `(I, J)` has `I ∈ K` and `J ∩ I = ∅`; it stands for `v_I u_J` with
//! `|v_i| = 2` and `|u_j| = 1`, so it sits in degree `2|I| + |J|` and
//! multidegree `I ∪ J`. The differential sends `u_j` to `v_j`; the product is
//! zero unless the multidegrees are disjoint and `I ∪ I'` is a face.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{
    reduced_cochain_complex, DegreeHomology, Grading, HomologySummary, IntegerChainComplex,
    IntegerMatrix,
};
use crate::linalg::{EchelonSpan, Field, FieldMatrix, PrimeField, Rationals, Ring};
use crate::mask::VertexMask;
use crate::taylor::TorTable;

/// Runs `$body` with `$f` bound to the field behind `$ring`.
macro_rules! with_field {
    ($ring:expr, $f:ident => $body:expr) => {
        match $ring {
            Ring::Rationals => {
                let $f = Rationals;
                $body
            }
            Ring::Prime(p) => {
                let $f = PrimeField::new(p).expect("prime modulus");
                $body
            }
            Ring::Integers => return Err(Error::NeedsField(Ring::Integers.to_string())),
        }
    };
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KoszulCell {
    #[serde(rename = "I")]
    pub face: VertexMask,
    #[serde(rename = "J")]
    pub free: VertexMask,
}

impl KoszulCell {
    pub fn new(face: VertexMask, free: VertexMask) -> Self {
        assert!(face.is_disjoint(free), "cell with overlapping I and J");
        KoszulCell { face, free }
    }

    pub fn unit() -> Self {
        KoszulCell::new(VertexMask::EMPTY, VertexMask::EMPTY)
    }

    pub fn degree(&self) -> i32 {
        2 * self.face.len() as i32 + self.free.len() as i32
    }

    pub fn multidegree(&self) -> VertexMask {
        self.face | self.free
    }

    fn label(&self) -> u128 {
        self.face.bits() as u128 | ((self.free.bits() as u128) << 64)
    }
}

impl fmt::Debug for KoszulCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.face, self.free)
    }
}

/// `d(I, J) = Σ_{j ∈ J, I ∪ j ∈ K} (-1)^{#{j' ∈ J : j' < j}} (I ∪ j, J - j)`.
pub fn cell_coboundary(k: &SimplicialComplex, cell: KoszulCell) -> Vec<(KoszulCell, i64)> {
    cell.free
        .iter()
        .filter(|&j| k.contains(cell.face.insert(j)))
        .map(|j| {
            let sign = if cell.free.count_below(j).is_multiple_of(2) { 1 } else { -1 };
            (KoszulCell::new(cell.face.insert(j), cell.free.remove(j)), sign)
        })
        .collect()
}

/// `(I, J) · (I', J')`, or `None` when the product vanishes.
pub fn cell_product(k: &SimplicialComplex, a: KoszulCell, b: KoszulCell) -> Option<(KoszulCell, i64)> {
    if !a.multidegree().is_disjoint(b.multidegree()) {
        return None;
    }
    let face = a.face | b.face;
    if !k.contains(face) {
        return None;
    }
    // sign of shuffling u_J u_J' into increasing order
    let inversions: usize = b.free.iter().map(|y| a.free.len() - a.free.count_below(y + 1)).sum();
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((KoszulCell::new(face, a.free | b.free), sign))
}

/// Cells of multidegree `U`, grouped by degree `|U| + |I|`, each group sorted.
fn block_cells(k: &SimplicialComplex, u: VertexMask) -> Vec<Vec<KoszulCell>> {
    let mut by_size: Vec<Vec<KoszulCell>> = vec![Vec::new(); u.len() + 1];
    for &face in k.faces() {
        if face.is_subset(u) {
            by_size[face.len()].push(KoszulCell::new(face, u - face));
        }
    }
    for v in &mut by_size {
        v.sort();
    }
    // trailing empty groups carry no cells
    while by_size.len() > 1 && by_size.last().is_some_and(Vec::is_empty) {
        by_size.pop();
    }
    by_size
}

fn coboundary_matrix(
    k: &SimplicialComplex,
    from: &[KoszulCell],
    to: &[KoszulCell],
) -> IntegerMatrix {
    let mut d = IntegerMatrix::zeros(to.len(), from.len());
    for (c, &cell) in from.iter().enumerate() {
        for (target, sign) in cell_coboundary(k, cell) {
            let r = to.binary_search(&target).expect("target cell");
            d.add_to(r, c, sign);
        }
    }
    d
}

fn assemble(k: &SimplicialComplex, groups: Vec<Vec<KoszulCell>>, min_degree: i32) -> IntegerChainComplex {
    let outgoing = (0..groups.len())
        .map(|g| {
            let next: &[KoszulCell] = groups.get(g + 1).map_or(&[], Vec::as_slice);
            coboundary_matrix(k, &groups[g], next)
        })
        .collect();
    let labels = groups
        .iter()
        .map(|g| g.iter().map(KoszulCell::label).collect())
        .collect();
    IntegerChainComplex::new(Grading::Cochain, min_degree, labels, outgoing)
        .expect("Koszul differential squares to zero")
}

/// The whole cochain complex, degrees `0..=2m`.
pub fn koszul_cochain_complex(k: &SimplicialComplex) -> IntegerChainComplex {
    let m = k.vertex_count();
    let mut groups: Vec<Vec<KoszulCell>> = vec![Vec::new(); 2 * m + 1];
    for &face in k.faces() {
        for free in (k.ground() - face).subsets() {
            let cell = KoszulCell::new(face, free);
            groups[cell.degree() as usize].push(cell);
        }
    }
    for g in &mut groups {
        g.sort();
    }
    assemble(k, groups, 0)
}

/// The summand of multidegree `U`, degrees `|U|..`.
pub fn koszul_block(k: &SimplicialComplex, u: VertexMask) -> IntegerChainComplex {
    assemble(k, block_cells(k, u), u.len() as i32)
}

/// Cohomology of `Z_K` by multidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZkCohomology {
    pub ring: Ring,
    /// Total dimension (free rank over `Z`) per degree, zeros omitted.
    pub dims: BTreeMap<i32, usize>,
    /// Dimension per `(degree, multidegree)`, zeros omitted.
    #[serde(skip)]
    pub by_block: BTreeMap<(i32, VertexMask), usize>,
    /// Torsion invariant factors per degree; only filled over `Z`.
    #[serde(serialize_with = "crate::homology::serialize_torsion_map")]
    pub torsion: BTreeMap<i32, Vec<BigInt>>,
}

impl ZkCohomology {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.values().all(Vec::is_empty)
    }
}

/// Cohomology of the Koszul cochain complex, computed block by block.
pub fn moment_angle_cohomology(k: &SimplicialComplex, ring: Ring) -> ZkCohomology {
    let mut dims = BTreeMap::new();
    let mut by_block = BTreeMap::new();
    let mut torsion: BTreeMap<i32, Vec<BigInt>> = BTreeMap::new();
    for u in k.ground().subsets() {
        let block = koszul_block(k, u);
        if ring == Ring::Integers {
            let h = block.homology();
            for (n, dh) in h.degrees {
                if dh.betti > 0 {
                    *dims.entry(n).or_default() += dh.betti;
                    by_block.insert((n, u), dh.betti);
                }
                if !dh.torsion.is_empty() {
                    torsion.entry(n).or_default().extend(dh.torsion);
                }
            }
        } else {
            for (n, d) in block.dims_over(ring) {
                if d > 0 {
                    *dims.entry(n).or_default() += d;
                    by_block.insert((n, u), d);
                }
            }
        }
    }
    for t in torsion.values_mut() {
        t.sort();
    }
    ZkCohomology {
        ring,
        dims,
        by_block,
        torsion,
    }
}

/// A homogeneous-or-not linear combination of cells over a field.
#[derive(Clone, PartialEq)]
pub struct CochainElement<F: Field> {
    field: F,
    terms: BTreeMap<KoszulCell, F::Elem>,
}

impl<F: Field> fmt::Debug for CochainElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<F: Field> CochainElement<F> {
    pub fn zero(field: F) -> Self {
        CochainElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn cell(field: F, cell: KoszulCell) -> Self {
        let mut x = Self::zero(field);
        let one = x.field.one();
        x.add_term(cell, one);
        x
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<KoszulCell, F::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, cell: KoszulCell, coeff: F::Elem) {
        if self.field.is_zero(&coeff) {
            return;
        }
        let f = self.field.clone();
        match self.terms.get_mut(&cell) {
            Some(c) => {
                *c = f.add(c, &coeff);
                if f.is_zero(c) {
                    self.terms.remove(&cell);
                }
            }
            None => {
                self.terms.insert(cell, coeff);
            }
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (&c, v) in &other.terms {
            out.add_term(c, v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone());
        for (&c, v) in &self.terms {
            out.add_term(c, self.field.mul(s, v));
        }
        out
    }

    /// Common degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<i32> {
        let mut degs = self.terms.keys().map(KoszulCell::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn multidegrees(&self) -> Vec<VertexMask> {
        let mut v: Vec<_> = self.terms.keys().map(KoszulCell::multidegree).collect();
        v.sort();
        v.dedup();
        v
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::RingMismatch(
                self.field.ring().to_string(),
                other.field.ring().to_string(),
            ));
        }
        Ok(())
    }
}

pub fn coboundary<F: Field>(k: &SimplicialComplex, x: &CochainElement<F>) -> CochainElement<F> {
    let f = x.field.clone();
    let mut out = CochainElement::zero(f.clone());
    for (&cell, c) in &x.terms {
        for (target, sign) in cell_coboundary(k, cell) {
            out.add_term(target, f.mul(c, &f.from_i64(sign)));
        }
    }
    out
}

/// Bilinear extension of [`cell_product`].
pub fn cup_product<F: Field>(
    k: &SimplicialComplex,
    x: &CochainElement<F>,
    y: &CochainElement<F>,
) -> Result<CochainElement<F>> {
    x.check_ring(y)?;
    let f = x.field.clone();
    let mut out = CochainElement::zero(f.clone());
    for (&a, ca) in &x.terms {
        for (&b, cb) in &y.terms {
            if let Some((cell, sign)) = cell_product(k, a, b) {
                out.add_term(cell, f.mul(&f.mul(ca, cb), &f.from_i64(sign)));
            }
        }
    }
    Ok(out)
}

/// One summand of a multidegree block with its matrices over a field.
struct FieldBlock<F: Field> {
    min_degree: i32,
    cells: Vec<Vec<KoszulCell>>,
    // coboundary leaving each degree
    maps: Vec<FieldMatrix<F>>,
}

impl<F: Field> FieldBlock<F> {
    fn new(field: &F, k: &SimplicialComplex, u: VertexMask) -> Self {
        let cells = block_cells(k, u);
        let maps = (0..cells.len())
            .map(|g| {
                let next: &[KoszulCell] = cells.get(g + 1).map_or(&[], Vec::as_slice);
                let d = coboundary_matrix(k, &cells[g], next);
                crate::linalg::field_matrix_from_integers(field, d.rows(), d.cols(), |r, c| {
                    d.get(r, c).clone()
                })
            })
            .collect();
        FieldBlock {
            min_degree: u.len() as i32,
            cells,
            maps,
        }
    }

    fn index(&self, n: i32) -> Option<usize> {
        let k = n - self.min_degree;
        (k >= 0 && (k as usize) < self.cells.len()).then_some(k as usize)
    }

    fn cells(&self, n: i32) -> &[KoszulCell] {
        self.index(n).map_or(&[], |k| &self.cells[k])
    }

    fn vector(&self, field: &F, n: i32, x: &CochainElement<F>) -> Vec<F::Elem> {
        let cells = self.cells(n);
        let mut v = vec![field.zero(); cells.len()];
        for (cell, c) in &x.terms {
            let i = cells.binary_search(cell).expect("cell in block");
            v[i] = c.clone();
        }
        v
    }

    fn element(&self, field: &F, n: i32, v: &[F::Elem]) -> CochainElement<F> {
        let mut x = CochainElement::zero(field.clone());
        for (cell, c) in self.cells(n).iter().zip(v) {
            x.add_term(*cell, c.clone());
        }
        x
    }

    /// Image of the coboundary arriving at degree `n`.
    fn image(&self, field: &F, n: i32) -> EchelonSpan<F> {
        let mut span = EchelonSpan::new(field.clone(), self.cells(n).len());
        if let Some(k) = self.index(n - 1) {
            let d = &self.maps[k];
            for c in 0..d.cols() {
                span.insert(&d.column(c));
            }
        }
        span
    }
}

/// A cohomology class with a chosen cocycle representative.
#[derive(Clone, Debug)]
pub struct CohomologyClass<F: Field> {
    pub degree: i32,
    pub multidegree: VertexMask,
    pub representative: CochainElement<F>,
}

/// Cocycle representatives spanning `H^*(Z_K; F)`, ordered by degree and
/// then multidegree (lexicographic).
///
/// Within a block the candidates are the null-space vectors of the outgoing
/// coboundary in reduced row echelon form (one per free cell, in cell order);
/// each is kept when it is independent of the coboundaries and of the
/// classes already kept.
pub fn cohomology_classes<F: Field>(field: &F, k: &SimplicialComplex) -> Vec<CohomologyClass<F>> {
    let mut out = Vec::new();
    for u in k.ground().subsets() {
        let block = FieldBlock::new(field, k, u);
        for (g, cells) in block.cells.iter().enumerate() {
            let n = block.min_degree + g as i32;
            let mut span = block.image(field, n);
            for v in block.maps[g].kernel() {
                if span.insert(&v) {
                    out.push(CohomologyClass {
                        degree: n,
                        multidegree: u,
                        representative: block.element(field, n, &v),
                    });
                }
            }
            debug_assert!(span.rank() <= cells.len());
        }
    }
    out.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then(a.multidegree.lex_cmp(b.multidegree))
    });
    out
}

/// Solves `d(w) = z`; returns `w` when `z` is a coboundary.
pub fn is_coboundary<F: Field>(
    k: &SimplicialComplex,
    z: &CochainElement<F>,
) -> Result<Option<CochainElement<F>>> {
    let field = z.field.clone();
    if z.is_zero() {
        return Ok(Some(CochainElement::zero(field)));
    }
    let n = z.degree().ok_or(Error::Inhomogeneous)?;
    if !coboundary(k, z).is_zero() {
        return Err(Error::NotACocycle);
    }
    let mut w = CochainElement::zero(field.clone());
    for u in z.multidegrees() {
        let mut part = CochainElement::zero(field.clone());
        for (cell, c) in &z.terms {
            if cell.multidegree() == u {
                part.add_term(*cell, c.clone());
            }
        }
        let block = FieldBlock::new(&field, k, u);
        let Some(idx) = block.index(n - 1) else {
            return Ok(None);
        };
        let rhs = block.vector(&field, n, &part);
        match block.maps[idx].solve(&rhs) {
            Some(x) => w = w.plus(&block.element(&field, n - 1, &x))?,
            None => return Ok(None),
        }
    }
    Ok(Some(w))
}

/// The first pair of basis classes whose product is not a coboundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductWitness {
    pub ring: Ring,
    pub degrees: (i32, i32),
    pub multidegrees: (VertexMask, VertexMask),
    pub product_degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductVerdict {
    pub ring: Ring,
    pub trivial: bool,
    pub witness: Option<ProductWitness>,
}

/// Whether every product of two positive-degree basis classes is a
/// coboundary. Over `Z` the verdict is the conjunction over `Q`, `F_2`, `F_3`
/// and `F_5`.
pub fn products_trivial(k: &SimplicialComplex, ring: Ring) -> Result<ProductVerdict> {
    if ring == Ring::Integers {
        for r in Ring::VERIFIED_FIELDS {
            let v = products_trivial(k, r)?;
            if !v.trivial {
                return Ok(ProductVerdict {
                    ring,
                    trivial: false,
                    witness: v.witness,
                });
            }
        }
        return Ok(ProductVerdict {
            ring,
            trivial: true,
            witness: None,
        });
    }
    with_field!(ring, f => Ok(scan_products(&f, k)))
}

fn scan_products<F: Field>(field: &F, k: &SimplicialComplex) -> ProductVerdict {
    let classes: Vec<_> = cohomology_classes(field, k)
        .into_iter()
        .filter(|c| c.degree > 0)
        .collect();
    let mut blocks: HashMap<VertexMask, FieldBlock<F>> = HashMap::new();
    let mut images: HashMap<(VertexMask, i32), EchelonSpan<F>> = HashMap::new();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i..] {
            if !a.multidegree.is_disjoint(b.multidegree) {
                continue;
            }
            let u = a.multidegree | b.multidegree;
            let n = a.degree + b.degree;
            let z = cup_product(k, &a.representative, &b.representative).expect("same field");
            if z.is_zero() {
                continue;
            }
            let block = blocks
                .entry(u)
                .or_insert_with(|| FieldBlock::new(field, k, u));
            let span = images
                .entry((u, n))
                .or_insert_with(|| block.image(field, n));
            if !span.contains(&block.vector(field, n, &z)) {
                return ProductVerdict {
                    ring: field.ring(),
                    trivial: false,
                    witness: Some(ProductWitness {
                        ring: field.ring(),
                        degrees: (a.degree, b.degree),
                        multidegrees: (a.multidegree, b.multidegree),
                        product_degree: n,
                    }),
                };
            }
        }
    }
    ProductVerdict {
        ring: field.ring(),
        trivial: true,
        witness: None,
    }
}

/// Reduced cohomology of one full subcomplex `K_I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HochsterTerm {
    /// `dim H̃^j(K_I)` (free rank over `Z`), zeros omitted.
    pub dims: BTreeMap<i32, usize>,
    /// Torsion of `H̃^j(K_I; Z)`; empty over fields.
    #[serde(serialize_with = "crate::homology::serialize_torsion_map")]
    pub torsion: BTreeMap<i32, Vec<BigInt>>,
}

/// `H̃^*(Z_K) = ⊕_{∅ ≠ I} H̃^{*-|I|-1}(K_I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiDecomposition {
    pub ring: Ring,
    #[serde(skip)]
    pub per_subset: BTreeMap<VertexMask, HochsterTerm>,
    /// Reduced dimensions per total degree, zeros omitted.
    pub assembled: BTreeMap<i32, usize>,
    #[serde(skip)]
    pub tor: TorTable,
}

impl BettiDecomposition {
    /// Unreduced dimensions: the reduced ones plus the unit in degree 0.
    pub fn unreduced(&self) -> BTreeMap<i32, usize> {
        let mut out = self.assembled.clone();
        *out.entry(0).or_default() += 1;
        out
    }

    pub fn is_torsion_free(&self) -> bool {
        self.per_subset
            .values()
            .all(|t| t.torsion.values().all(Vec::is_empty))
    }

    /// `(degree, multidegree) → dim`, the unit included.
    pub fn by_block(&self) -> BTreeMap<(i32, VertexMask), usize> {
        let mut out = BTreeMap::new();
        out.insert((0, VertexMask::EMPTY), 1);
        for (&i, term) in &self.per_subset {
            for (&j, &d) in &term.dims {
                out.insert((j + i.len() as i32 + 1, i), d);
            }
        }
        out
    }
}

fn hochster_term(sub: &SimplicialComplex, ring: Ring) -> HochsterTerm {
    let co = reduced_cochain_complex(sub);
    if ring == Ring::Integers {
        let h: HomologySummary = co.homology();
        let mut dims = BTreeMap::new();
        let mut torsion = BTreeMap::new();
        for (j, DegreeHomology { betti, torsion: t }) in h.degrees {
            if betti > 0 {
                dims.insert(j, betti);
            }
            if !t.is_empty() {
                torsion.insert(j, t);
            }
        }
        HochsterTerm { dims, torsion }
    } else {
        HochsterTerm {
            dims: co.dims_over(ring).into_iter().filter(|&(_, d)| d > 0).collect(),
            torsion: BTreeMap::new(),
        }
    }
}

/// Additive cohomology of `Z_K` from the reduced cohomology of full
/// subcomplexes, with the Betti table `β_{ℓ,I} = dim H̃^{|I|-ℓ-1}(K_I)`.
pub fn hochster_table(k: &SimplicialComplex, ring: Ring) -> BettiDecomposition {
    let mut per_subset = BTreeMap::new();
    let mut assembled = BTreeMap::new();
    let mut tor = TorTable::default();
    tor.add(0, VertexMask::EMPTY, 1);
    for i in k.ground().subsets().skip(1) {
        let sub = k.full_subcomplex(i).expect("subset of ground");
        let term = hochster_term(&sub, ring);
        let size = i.len() as i32;
        for (&j, &d) in &term.dims {
            *assembled.entry(j + size + 1).or_default() += d;
            tor.add((size - j - 1) as usize, i, d);
        }
        per_subset.insert(i, term);
    }
    BettiDecomposition {
        ring,
        per_subset,
        assembled,
        tor,
    }
}

pub const CUBICAL_MAX_VERTICES: usize = 14;

/// Augmented cubical chain complex of the real moment-angle complex.
///
/// Cells are pairs `(τ, f)` with `τ ∈ K` the free coordinates and `f` the
/// coordinates outside `τ` fixed at 1 (the rest fixed at 0); the degree is
/// `|τ|`. With `τ = {t_1 < .. < t_k}`,
/// `∂(τ, f) = Σ_i (-1)^{i-1} ((τ - t_i, f + t_i) - (τ - t_i, f))`.
pub fn real_cubical_complex(k: &SimplicialComplex) -> Result<IntegerChainComplex> {
    let m = k.vertex_count();
    if m > CUBICAL_MAX_VERTICES {
        return Err(Error::TooManyVertices(m, CUBICAL_MAX_VERTICES));
    }
    let top = (k.dim() + 1).max(0) as usize;
    let mut cells: Vec<Vec<(VertexMask, VertexMask)>> = vec![Vec::new(); top + 1];
    for &tau in k.faces() {
        for f in (k.ground() - tau).subsets() {
            cells[tau.len()].push((tau, f));
        }
    }
    for c in &mut cells {
        c.sort();
    }
    let mut labels: Vec<Vec<u128>> = vec![vec![0]];
    let mut outgoing = vec![IntegerMatrix::zeros(0, 1)];
    for (size, group) in cells.iter().enumerate() {
        labels.push(
            group
                .iter()
                .map(|(t, f)| t.bits() as u128 | ((f.bits() as u128) << 64))
                .collect(),
        );
        if size == 0 {
            let mut aug = IntegerMatrix::zeros(1, group.len());
            for c in 0..group.len() {
                aug.set(0, c, BigInt::from(1));
            }
            outgoing.push(aug);
            continue;
        }
        let targets = &cells[size - 1];
        let mut d = IntegerMatrix::zeros(targets.len(), group.len());
        for (c, &(tau, f)) in group.iter().enumerate() {
            for (pos, t) in tau.iter().enumerate() {
                let s = if pos % 2 == 0 { 1 } else { -1 };
                let hi = targets.binary_search(&(tau.remove(t), f.insert(t))).expect("face");
                let lo = targets.binary_search(&(tau.remove(t), f)).expect("face");
                d.add_to(hi, c, s);
                d.add_to(lo, c, -s);
            }
        }
        outgoing.push(d);
    }
    IntegerChainComplex::new(Grading::Chain, -1, labels, outgoing)
}

/// `Σ_{∅ ≠ I} dim H̃_{n-1}(K_I)` per `n`: the additive prediction for the
/// reduced homology of the real moment-angle complex.
pub fn real_hochster_dims(k: &SimplicialComplex, ring: Ring) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for i in k.ground().subsets().skip(1) {
        let sub = k.full_subcomplex(i).expect("subset of ground");
        let c = crate::homology::reduced_chain_complex(&sub);
        for (j, d) in c.dims_over(ring) {
            if d > 0 {
                *out.entry(j + 1).or_default() += d;
            }
        }
    }
    out
}

/// Drops zero entries of a dimension table.
pub fn nonzero_dims(dims: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    dims.iter().filter(|(_, &d)| d > 0).map(|(&n, &d)| (n, d)).collect()
}
