//! The Taylor resolution of a Stanley-Reisner ring: its monomial
//! differential, minimality, and multigraded Betti numbers.
//!
//! Generators `w_S` are indexed by subsets `S` of `{1, .., r}` (bit `i - 1`
//! for the `i`-th minimal non-face) and carry multidegree `⋃_{i ∈ S} N_i`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::check_antichain;
use crate::error::{Error, Result};
use crate::homology::{Grading, IntegerChainComplex, IntegerMatrix};
use crate::linalg::Ring;
use crate::mask::VertexMask;

/// `±v_A`, or nothing when `sign == 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonomialEntry {
    pub sign: i8,
    pub multidegree: VertexMask,
}

impl MonomialEntry {
    pub fn is_unit(&self) -> bool {
        self.sign != 0 && self.multidegree.is_empty()
    }
}

/// A matrix of signed squarefree monomials, columns indexed by the
/// generators of degree `ℓ` and rows by those of degree `ℓ - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    pub row_generators: Vec<u64>,
    pub col_generators: Vec<u64>,
    entries: Vec<MonomialEntry>,
}

impl MonomialMatrix {
    pub fn rows(&self) -> usize {
        self.row_generators.len()
    }

    pub fn cols(&self) -> usize {
        self.col_generators.len()
    }

    pub fn get(&self, r: usize, c: usize) -> MonomialEntry {
        self.entries[r * self.cols() + c]
    }

    /// Non-zero entries as `(row, col, entry)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, MonomialEntry)> + '_ {
        let cols = self.cols();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.sign != 0)
            .map(move |(k, &e)| (k / cols, k % cols, e))
    }
}

/// Subsets of `{1..r}` of size `l` in increasing numeric order.
pub fn generators(r: usize, l: usize) -> Vec<u64> {
    assert!(r < 64, "too many minimal non-faces");
    if l > r {
        return vec![];
    }
    if l == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let limit = 1u64 << r;
    let mut s = (1u64 << l) - 1;
    while s < limit {
        out.push(s);
        // Gosper's hack: next integer with the same popcount
        let c = s & s.wrapping_neg();
        let ripple = s + c;
        s = (((ripple ^ s) >> 2) / c) | ripple;
    }
    out
}

/// `⋃_{i ∈ S} N_i`.
pub fn generator_multidegree(mnfs: &[VertexMask], s: u64) -> VertexMask {
    bits(s).fold(VertexMask::EMPTY, |acc, i| acc | mnfs[i])
}

fn bits(mut s: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            return None;
        }
        let i = s.trailing_zeros() as usize;
        s &= s - 1;
        Some(i)
    })
}

/// Entries of `d(w_S)`: `(S - i_k, (-1)^{k+1}, N_{i_k} - ⋃_{j ≠ k} N_{i_j})`.
fn differential_terms(mnfs: &[VertexMask], s: u64) -> Vec<(u64, i8, VertexMask)> {
    let idx: Vec<usize> = bits(s).collect();
    let l = idx.len();
    // prefix/suffix unions to get the union of all other entries in O(l)
    let mut prefix = vec![VertexMask::EMPTY; l + 1];
    let mut suffix = vec![VertexMask::EMPTY; l + 1];
    for k in 0..l {
        prefix[k + 1] = prefix[k] | mnfs[idx[k]];
        suffix[l - 1 - k] = suffix[l - k] | mnfs[idx[l - 1 - k]];
    }
    (0..l)
        .map(|k| {
            let others = prefix[k] | suffix[k + 1];
            let sign = if k % 2 == 0 { 1 } else { -1 };
            (s & !(1u64 << idx[k]), sign, mnfs[idx[k]] - others)
        })
        .collect()
}

/// The Taylor differential `R^{-ℓ} → R^{-ℓ+1}`.
pub fn taylor_differential(mnfs: &[VertexMask], l: usize) -> Result<MonomialMatrix> {
    check_antichain(mnfs)?;
    let r = mnfs.len();
    if l == 0 || l > r {
        return Err(Error::TaylorDegree { degree: l, r });
    }
    let cols = generators(r, l);
    let rows = generators(r, l - 1);
    let row_index: HashMap<u64, usize> = rows.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut entries = vec![MonomialEntry::default(); rows.len() * cols.len()];
    for (c, &s) in cols.iter().enumerate() {
        for (t, sign, multidegree) in differential_terms(mnfs, s) {
            entries[row_index[&t] * cols.len() + c] = MonomialEntry { sign, multidegree };
        }
    }
    Ok(MonomialMatrix {
        row_generators: rows,
        col_generators: cols,
        entries,
    })
}

/// Checks `d_{ℓ-1} ∘ d_ℓ = 0` over the polynomial ring: products of monomials
/// are tracked by exponent vector and every coefficient must cancel.
pub fn composite_vanishes(mnfs: &[VertexMask], l: usize) -> Result<bool> {
    let r = mnfs.len();
    if l < 2 || l > r {
        return Err(Error::TaylorDegree { degree: l, r });
    }
    let upper = taylor_differential(mnfs, l)?;
    let lower = taylor_differential(mnfs, l - 1)?;
    // key: (target row, source column, support, squared part)
    let mut sums: HashMap<(usize, usize, VertexMask, VertexMask), i64> = HashMap::new();
    for (mid, c, e1) in upper.nonzero() {
        for r2 in 0..lower.rows() {
            let e2 = lower.get(r2, mid);
            if e2.sign == 0 {
                continue;
            }
            let key = (
                r2,
                c,
                e1.multidegree | e2.multidegree,
                e1.multidegree & e2.multidegree,
            );
            *sums.entry(key).or_default() += (e1.sign * e2.sign) as i64;
        }
    }
    Ok(sums.values().all(|&v| v == 0))
}

/// Private vertices `a_i ∈ N_i - ⋃_{k ≠ i} N_k` (smallest choice), or the
/// 1-based index of the first `N_i` covered by the others.
pub fn private_vertices(mnfs: &[VertexMask]) -> std::result::Result<Vec<u8>, usize> {
    let mut out = Vec::with_capacity(mnfs.len());
    for (i, &n) in mnfs.iter().enumerate() {
        let others = mnfs
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .fold(VertexMask::EMPTY, |acc, (_, &m)| acc | m);
        match (n - others).min_vertex() {
            Some(a) => out.push(a),
            None => return Err(i + 1),
        }
    }
    Ok(out)
}

/// A unit entry of the Taylor differential: generator `S` (column) and the
/// removed index `i` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitEntry {
    pub generator: u64,
    pub removed: usize,
}

/// Scans the Taylor differential for an entry `±v_∅`, top degree first.
///
/// Enumerates generators, so the cost is exponential in the number of
/// minimal non-faces when none is found.
pub fn unit_entry_scan(mnfs: &[VertexMask]) -> Option<UnitEntry> {
    let r = mnfs.len();
    for l in (1..=r).rev() {
        for s in generators(r, l) {
            for (t, _, md) in differential_terms(mnfs, s) {
                if md.is_empty() {
                    let removed = (s & !t).trailing_zeros() as usize + 1;
                    return Some(UnitEntry {
                        generator: s,
                        removed,
                    });
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalityWitness {
    /// `a_i` for each minimal non-face, in order.
    PrivateVertices(Vec<u8>),
    /// 1-based index `i` with `N_i ⊆ ⋃_{k ≠ i} N_k`.
    Covered(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    /// Verdict of the private-vertex criterion.
    pub minimal: bool,
    pub witness: MinimalityWitness,
    /// Verdict of the unit-entry scan of the differential.
    pub scan_minimal: bool,
    pub unit_entry: Option<UnitEntry>,
}

impl MinimalityReport {
    pub fn routes_agree(&self) -> bool {
        self.minimal == self.scan_minimal
    }
}

/// Minimality of the Taylor resolution, decided by private vertices and,
/// independently, by looking for unit entries in the differential.
pub fn is_minimal_taylor(mnfs: &[VertexMask]) -> MinimalityReport {
    let (minimal, witness) = match private_vertices(mnfs) {
        Ok(p) => (true, MinimalityWitness::PrivateVertices(p)),
        Err(i) => (false, MinimalityWitness::Covered(i)),
    };
    let unit_entry = unit_entry_scan(mnfs);
    MinimalityReport {
        minimal,
        witness,
        scan_minimal: unit_entry.is_none(),
        unit_entry,
    }
}

/// Multigraded Betti numbers `β_{ℓ,I}`, keeping only non-zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorTable {
    entries: BTreeMap<(usize, VertexMask), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorEntry {
    pub l: usize,
    #[serde(rename = "I")]
    pub multidegree: VertexMask,
    pub beta: usize,
}

impl TorTable {
    pub fn add(&mut self, l: usize, multidegree: VertexMask, beta: usize) {
        if beta > 0 {
            *self.entries.entry((l, multidegree)).or_default() += beta;
        }
    }

    pub fn get(&self, l: usize, multidegree: VertexMask) -> usize {
        self.entries.get(&(l, multidegree)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn total_in_degree(&self, l: usize) -> usize {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == l)
            .map(|(_, b)| b)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, VertexMask, usize)> + '_ {
        self.entries.iter().map(|(&(l, i), &b)| (l, i, b))
    }

    /// Dimensions of `H^n(Z_K)` with `β_{ℓ,I}` placed at `n = 2|I| - ℓ`.
    pub fn moment_angle_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (l, i, b) in self.iter() {
            *out.entry(2 * i.len() as i32 - l as i32).or_default() += b;
        }
        out
    }

    /// Entries sorted by `(ℓ, I)` with `I` in lexicographic order.
    pub fn to_entries(&self) -> Vec<TorEntry> {
        let mut v: Vec<TorEntry> = self
            .iter()
            .map(|(l, multidegree, beta)| TorEntry {
                l,
                multidegree,
                beta,
            })
            .collect();
        v.sort_by(|a, b| a.l.cmp(&b.l).then(a.multidegree.lex_cmp(b.multidegree)));
        v
    }
}

impl Serialize for TorTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_entries().serialize(s)
    }
}

/// Betti numbers as homology of the Taylor complex tensored down to the
/// field: only unit entries survive and the complex splits by multidegree.
pub fn betti_from_taylor(mnfs: &[VertexMask], ring: Ring) -> Result<TorTable> {
    if !ring.is_field() {
        return Err(Error::NeedsField(ring.to_string()));
    }
    check_antichain(mnfs)?;
    let r = mnfs.len();
    assert!(r < 32, "Taylor complex with {r} generators is too large");
    // generators grouped by multidegree, then by degree
    let mut blocks: BTreeMap<VertexMask, BTreeMap<usize, Vec<u64>>> = BTreeMap::new();
    for s in 0..(1u64 << r) {
        blocks
            .entry(generator_multidegree(mnfs, s))
            .or_default()
            .entry(s.count_ones() as usize)
            .or_default()
            .push(s);
    }
    let mut table = TorTable::default();
    for (md, by_degree) in blocks {
        let lo = *by_degree.keys().next().expect("non-empty block");
        let hi = *by_degree.keys().last().expect("non-empty block");
        let basis: Vec<Vec<u64>> = (lo..=hi)
            .map(|l| by_degree.get(&l).cloned().unwrap_or_default())
            .collect();
        let mut outgoing = Vec::new();
        for (k, gens) in basis.iter().enumerate() {
            let targets: &[u64] = if k == 0 { &[] } else { &basis[k - 1] };
            let mut d = IntegerMatrix::zeros(targets.len(), gens.len());
            for (c, &s) in gens.iter().enumerate() {
                for (t, sign, entry) in differential_terms(mnfs, s) {
                    if entry.is_empty() {
                        let row = targets.binary_search(&t).expect("same multidegree");
                        d.add_to(row, c, sign as i64);
                    }
                }
            }
            outgoing.push(d);
        }
        let labels = basis
            .iter()
            .map(|g| g.iter().map(|&s| s as u128).collect())
            .collect();
        let complex = IntegerChainComplex::new(Grading::Chain, lo as i32, labels, outgoing)?;
        for (l, dim) in complex.dims_over(ring) {
            table.add(l as usize, md, dim);
        }
    }
    Ok(table)
}
