//! Simplicial complexes stored as explicit face sets, their minimal non-faces,
//! and the complexes `K(N)` whose minimal non-faces are given sets each
//! augmented by a private vertex.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::{sort_lex, VertexMask, MAX_VERTEX};

/// A downward-closed family of subsets of a ground set.
///
/// The ground set may contain ghost vertices (elements whose singleton is not a
/// face). The empty face is always present, so the void complex cannot be
/// represented.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    ground: VertexMask,
    // sorted by numeric value of the mask
    faces: Vec<VertexMask>,
}

impl SimplicialComplex {
    fn from_sorted(ground: VertexMask, faces: Vec<VertexMask>) -> Self {
        debug_assert!(faces.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(faces.first() == Some(&VertexMask::EMPTY));
        SimplicialComplex { ground, faces }
    }

    fn from_unsorted(ground: VertexMask, mut faces: Vec<VertexMask>) -> Self {
        faces.sort_unstable();
        faces.dedup();
        Self::from_sorted(ground, faces)
    }

    /// The smallest complex on `[m]` containing every facet.
    pub fn from_facets(m: u8, facets: &[VertexMask]) -> Result<Self> {
        if m > MAX_VERTEX {
            return Err(Error::TooManyVertices(m as usize, MAX_VERTEX as usize));
        }
        Self::from_facets_on(VertexMask::range(m), facets)
    }

    pub fn from_facets_on(ground: VertexMask, facets: &[VertexMask]) -> Result<Self> {
        let mut faces = BTreeSet::new();
        faces.insert(VertexMask::EMPTY);
        for &facet in facets {
            if !facet.is_subset(ground) {
                return Err(Error::OutOfRange { mask: facet, ground });
            }
            if faces.contains(&facet) {
                continue;
            }
            faces.extend(facet.subsets());
        }
        Ok(Self::from_sorted(ground, faces.into_iter().collect()))
    }

    /// The complex on `[m]` whose minimal non-faces are exactly `mnfs`.
    pub fn from_minimal_nonfaces(m: u8, mnfs: &[VertexMask]) -> Result<Self> {
        if m > MAX_VERTEX {
            return Err(Error::TooManyVertices(m as usize, MAX_VERTEX as usize));
        }
        Self::from_minimal_nonfaces_on(VertexMask::range(m), mnfs)
    }

    pub fn from_minimal_nonfaces_on(ground: VertexMask, mnfs: &[VertexMask]) -> Result<Self> {
        check_antichain(mnfs)?;
        for &n in mnfs {
            if !n.is_subset(ground) {
                return Err(Error::OutOfRange { mask: n, ground });
            }
        }
        Ok(Self::avoiding(ground, mnfs))
    }

    /// All subsets of `ground` containing none of `forbidden`.
    fn avoiding(ground: VertexMask, forbidden: &[VertexMask]) -> Self {
        let vertices = ground.to_vec();
        let mut faces = vec![VertexMask::EMPTY];
        // depth-first over faces, extending by vertices beyond the current maximum
        let mut stack: Vec<(VertexMask, usize)> = vec![(VertexMask::EMPTY, 0)];
        while let Some((face, start)) = stack.pop() {
            for (k, &v) in vertices.iter().enumerate().skip(start) {
                let next = face.insert(v);
                let blocked = forbidden
                    .iter()
                    .any(|n| n.contains(v) && n.is_subset(next));
                if !blocked {
                    faces.push(next);
                    stack.push((next, k + 1));
                }
            }
        }
        Self::from_unsorted(ground, faces)
    }

    pub fn full_simplex(vertices: VertexMask) -> Self {
        Self::from_unsorted(vertices, vertices.subsets().collect())
    }

    /// All proper subsets of `vertices`.
    pub fn boundary_simplex(vertices: VertexMask) -> Self {
        Self::from_unsorted(vertices, vertices.subsets().filter(|&s| s != vertices).collect())
    }

    /// The complex `{∅}` on the given ground set; every vertex is a ghost.
    pub fn empty_on(ground: VertexMask) -> Self {
        Self::from_sorted(ground, vec![VertexMask::EMPTY])
    }

    pub fn ground(&self) -> VertexMask {
        self.ground
    }

    /// Size of the ground set.
    pub fn vertex_count(&self) -> usize {
        self.ground.len()
    }

    /// Faces in increasing numeric mask order.
    pub fn faces(&self) -> &[VertexMask] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: VertexMask) -> bool {
        self.faces.binary_search(&face).is_ok()
    }

    /// Index of `face` in [`faces`](Self::faces).
    pub fn face_index(&self, face: VertexMask) -> Option<usize> {
        self.faces.binary_search(&face).ok()
    }

    pub fn faces_of_size(&self, size: usize) -> impl Iterator<Item = VertexMask> + '_ {
        self.faces.iter().copied().filter(move |f| f.len() == size)
    }

    /// Dimension, with `{∅}` having dimension -1.
    pub fn dim(&self) -> i32 {
        self.faces.iter().map(|f| f.len() as i32).max().unwrap_or(0) - 1
    }

    /// Vertices that are faces.
    pub fn vertices(&self) -> VertexMask {
        self.faces
            .iter()
            .filter(|f| f.len() == 1)
            .fold(VertexMask::EMPTY, |acc, &f| acc | f)
    }

    pub fn ghost_vertices(&self) -> VertexMask {
        self.ground - self.vertices()
    }

    pub fn facets(&self) -> Vec<VertexMask> {
        let mut out: Vec<VertexMask> = self
            .faces
            .iter()
            .copied()
            .filter(|&f| {
                (self.ground - f)
                    .iter()
                    .all(|v| !self.contains(f.insert(v)))
            })
            .collect();
        sort_lex(&mut out);
        out
    }

    /// Masks `N ∉ K` with `N - i ∈ K` for every `i ∈ N`, sorted lexicographically.
    pub fn minimal_nonfaces(&self) -> Vec<VertexMask> {
        let mut out = BTreeSet::new();
        for &face in &self.faces {
            for v in (self.ground - face).iter() {
                let cand = face.insert(v);
                if out.contains(&cand) || self.contains(cand) {
                    continue;
                }
                if cand.iter().all(|u| self.contains(cand.remove(u))) {
                    out.insert(cand);
                }
            }
        }
        let mut out: Vec<_> = out.into_iter().collect();
        sort_lex(&mut out);
        out
    }

    /// `K_I = {σ ∈ K : σ ⊆ I}` on the ground set `I`, keeping original labels.
    pub fn full_subcomplex(&self, subset: VertexMask) -> Result<Self> {
        if !subset.is_subset(self.ground) {
            return Err(Error::OutOfRange {
                mask: subset,
                ground: self.ground,
            });
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|f| f.is_subset(subset))
            .collect();
        Ok(Self::from_sorted(subset, faces))
    }

    /// Link of a face, on the ground set `ground - σ`.
    pub fn link(&self, sigma: VertexMask) -> Result<Self> {
        if !self.contains(sigma) {
            return Err(Error::NotAFace(sigma));
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|&t| t.is_disjoint(sigma) && self.contains(t | sigma))
            .collect();
        Ok(Self::from_sorted(self.ground - sigma, faces))
    }

    /// Deletion of a vertex, on the ground set `ground - v`.
    pub fn deletion(&self, v: u8) -> Result<Self> {
        if !self.ground.contains(v) {
            return Err(Error::NoSuchVertex(v));
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|f| !f.contains(v))
            .collect();
        Ok(Self::from_sorted(self.ground.remove(v), faces))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        if !self.ground.is_disjoint(other.ground) {
            return Err(Error::OverlappingJoin(self.ground, other.ground));
        }
        let mut faces = Vec::with_capacity(self.faces.len() * other.faces.len());
        for &a in &self.faces {
            for &b in &other.faces {
                faces.push(a | b);
            }
        }
        Ok(Self::from_unsorted(self.ground | other.ground, faces))
    }

    /// Applies a vertex relabeling. `map` must be injective on the ground set.
    pub fn relabel(&self, map: impl Fn(u8) -> u8) -> Self {
        let apply = |m: VertexMask| m.iter().map(&map).collect::<VertexMask>();
        let faces = self.faces.iter().map(|&f| apply(f)).collect();
        let out = Self::from_unsorted(apply(self.ground), faces);
        debug_assert_eq!(out.faces.len(), self.faces.len());
        out
    }

    /// Relabels the ground set order-preservingly onto `1..=n`.
    ///
    /// Returns the relabeled complex and the label map: entry `k` holds the
    /// original label of new vertex `k + 1`.
    pub fn compress_labels(&self) -> (Self, Vec<u8>) {
        let originals = self.ground.to_vec();
        let mut forward = [0u8; MAX_VERTEX as usize + 1];
        for (k, &v) in originals.iter().enumerate() {
            forward[v as usize] = k as u8 + 1;
        }
        (self.relabel(|v| forward[v as usize]), originals)
    }
}

/// Rejects empty sets and comparable pairs.
pub fn check_antichain(sets: &[VertexMask]) -> Result<()> {
    for (k, &a) in sets.iter().enumerate() {
        if a.is_empty() {
            return Err(Error::EmptyNonFace);
        }
        for &b in &sets[k + 1..] {
            if a.is_subset(b) || b.is_subset(a) {
                return Err(Error::NotAntichain(a, b));
            }
        }
    }
    Ok(())
}

/// An ordered sequence `(N_1, .., N_r)` of subsets of a ground set `W`.
///
/// Repeated and empty entries are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NonFaceSequence {
    ground: VertexMask,
    entries: Vec<VertexMask>,
}

impl NonFaceSequence {
    pub fn new(ground: VertexMask, entries: Vec<VertexMask>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|e| !e.is_subset(ground)) {
            return Err(Error::OutOfRange { mask: bad, ground });
        }
        Ok(NonFaceSequence { ground, entries })
    }

    pub fn ground(&self) -> VertexMask {
        self.ground
    }

    pub fn entries(&self) -> &[VertexMask] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn union(&self) -> VertexMask {
        self.entries
            .iter()
            .fold(VertexMask::EMPTY, |acc, &e| acc | e)
    }

    pub fn covers_ground(&self) -> bool {
        self.union() == self.ground
    }

    /// `(N_i - w)_i` over the ground set `W - w`.
    pub fn link_sequence(&self, w: u8) -> Result<Self> {
        if !self.ground.contains(w) {
            return Err(Error::NoSuchVertex(w));
        }
        Ok(NonFaceSequence {
            ground: self.ground.remove(w),
            entries: self.entries.iter().map(|e| e.remove(w)).collect(),
        })
    }

    /// `(N_i : w ∉ N_i)` over `W - w`, with the 1-based indices of the kept
    /// entries and of the dropped ones (the latter index `A_w`).
    pub fn deletion_sequence(&self, w: u8) -> Result<(Self, Vec<usize>, Vec<usize>)> {
        if !self.ground.contains(w) {
            return Err(Error::NoSuchVertex(w));
        }
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        let mut entries = Vec::new();
        for (k, &e) in self.entries.iter().enumerate() {
            if e.contains(w) {
                dropped.push(k + 1);
            } else {
                kept.push(k + 1);
                entries.push(e);
            }
        }
        let seq = NonFaceSequence {
            ground: self.ground.remove(w),
            entries,
        };
        Ok((seq, kept, dropped))
    }

    /// `M_i = N_i - (N_1 ∪ .. ∪ N_{i-1})`.
    pub fn disjointify(&self) -> Self {
        let mut seen = VertexMask::EMPTY;
        let entries = self
            .entries
            .iter()
            .map(|&e| {
                let m = e - seen;
                seen = seen | e;
                m
            })
            .collect();
        NonFaceSequence {
            ground: self.ground,
            entries,
        }
    }
}

/// Meaning of a vertex label of `K(N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnVertex {
    /// An element of the ground set `W`, by its original label.
    Ground(u8),
    /// The private vertex `a_i`, by the 1-based entry index `i`.
    Extra(usize),
}

/// `K(N)` together with its vertex labeling.
///
/// `W` is relabeled order-preservingly onto `1..=|W|` and `a_i` gets label
/// `|W| + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnComplex {
    pub complex: SimplicialComplex,
    /// Entry `k` describes label `k + 1`.
    pub labels: Vec<KnVertex>,
}

impl KnComplex {
    pub fn label_of(&self, vertex: KnVertex) -> Option<u8> {
        self.labels
            .iter()
            .position(|&l| l == vertex)
            .map(|k| k as u8 + 1)
    }

    /// Minimal non-faces `Ñ_i = N_i ⊔ {a_i}` in entry order, in the new labels.
    pub fn augmented_nonfaces(&self, seq: &NonFaceSequence) -> Vec<VertexMask> {
        seq.entries()
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let a = self.label_of(KnVertex::Extra(k + 1)).expect("extra vertex");
                e.iter()
                    .map(|w| self.label_of(KnVertex::Ground(w)).expect("ground vertex"))
                    .collect::<VertexMask>()
                    .insert(a)
            })
            .collect()
    }
}

/// Builds the complex on the labels produced by `ground_label` and
/// `extra_label` whose minimal non-faces are `N_i ⊔ {a_i}`.
fn kn_with_labels(
    seq: &NonFaceSequence,
    ground_label: impl Fn(u8) -> u8,
    extra_label: impl Fn(usize) -> u8,
) -> SimplicialComplex {
    let mut ground: VertexMask = seq.ground.iter().map(&ground_label).collect();
    let mnfs: Vec<VertexMask> = seq
        .entries
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let a = extra_label(k + 1);
            ground = ground.insert(a);
            e.iter().map(&ground_label).collect::<VertexMask>().insert(a)
        })
        .collect();
    // distinct private vertices make the augmented sets an antichain
    SimplicialComplex::avoiding(ground, &mnfs)
}

/// `K(N)`: the complex on `W ⊔ {a_1, .., a_r}` with minimal non-faces `N_i ⊔ {a_i}`.
pub fn build_kn(seq: &NonFaceSequence) -> Result<KnComplex> {
    let total = seq.ground.len() + seq.entries.len();
    if total > MAX_VERTEX as usize {
        return Err(Error::TooManyVertices(total, MAX_VERTEX as usize));
    }
    let w = seq.ground.len() as u8;
    let complex = kn_with_labels(
        seq,
        |v| seq.ground.count_below(v) as u8 + 1,
        |i| w + i as u8,
    );
    let labels = seq
        .ground
        .iter()
        .map(KnVertex::Ground)
        .chain((1..=seq.entries.len()).map(KnVertex::Extra))
        .collect();
    Ok(KnComplex { complex, labels })
}

/// A sequence recovered from a complex with private vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredSequence {
    pub sequence: NonFaceSequence,
    /// `a_i` in the original labels of the complex.
    pub private_vertices: Vec<u8>,
}

impl RecoveredSequence {
    /// `K(N)` relabeled back into the labels of the complex it was recovered from.
    pub fn rebuild(&self) -> Result<SimplicialComplex> {
        let kn = build_kn(&self.sequence)?;
        let labels = kn.labels.clone();
        Ok(kn.complex.relabel(|l| match labels[l as usize - 1] {
            KnVertex::Ground(v) => v,
            KnVertex::Extra(i) => self.private_vertices[i - 1],
        }))
    }
}

/// Writes a complex with a minimal Taylor resolution as `K(N)`.
///
/// Minimal non-faces are taken in lexicographic order and `a_i` is the
/// smallest vertex of `N_i` lying in no other minimal non-face.
pub fn recover_sequence(k: &SimplicialComplex) -> Result<RecoveredSequence> {
    let mnfs = k.minimal_nonfaces();
    let private = crate::taylor::private_vertices(&mnfs)
        .map_err(|index| Error::NotMinimalTaylor {
            index,
            face: mnfs[index - 1],
        })?;
    let privates: VertexMask = private.iter().copied().collect();
    let ground = k.ground() - privates;
    let entries = mnfs
        .iter()
        .zip(&private)
        .map(|(&n, &a)| n.remove(a))
        .collect();
    Ok(RecoveredSequence {
        sequence: NonFaceSequence::new(ground, entries)?,
        private_vertices: private,
    })
}

/// The link of `w` in `K(N)` computed twice: as `K(N_w)` placed in the labels
/// of `K(N)`, and directly.
#[derive(Clone, Debug)]
pub struct LinkCheck {
    pub sequence: NonFaceSequence,
    pub computed: SimplicialComplex,
    pub expected: SimplicialComplex,
}

impl LinkCheck {
    pub fn agrees(&self) -> bool {
        self.computed == self.expected
    }
}

/// The deletion of `w` from `K(N)` computed as `K(N̂_w) * Δ^{A_w}` and directly.
#[derive(Clone, Debug)]
pub struct DeletionCheck {
    pub sequence: NonFaceSequence,
    /// `A_w` as 1-based entry indices.
    pub cone_indices: Vec<usize>,
    /// `A_w` in the labels of `K(N)`.
    pub cone: VertexMask,
    pub computed: SimplicialComplex,
    pub expected: SimplicialComplex,
}

impl DeletionCheck {
    pub fn agrees(&self) -> bool {
        self.computed == self.expected
    }
}

/// `lk_{K(N)}(w) = K(N_w)`, `w` given by its original label in `W`.
pub fn link_kn(seq: &NonFaceSequence, w: u8) -> Result<LinkCheck> {
    let sub = seq.link_sequence(w)?;
    let parent = build_kn(seq)?;
    let wl = parent.label_of(KnVertex::Ground(w)).expect("w in W");
    let expected = parent.complex.link(VertexMask::singleton(wl))?;
    let computed = kn_with_labels(
        &sub,
        |v| parent.label_of(KnVertex::Ground(v)).expect("ground vertex"),
        |i| parent.label_of(KnVertex::Extra(i)).expect("extra vertex"),
    );
    Ok(LinkCheck {
        sequence: sub,
        computed,
        expected,
    })
}

/// `dl_{K(N)}(w) = K(N̂_w) * Δ^{A_w}`.
pub fn deletion_kn(seq: &NonFaceSequence, w: u8) -> Result<DeletionCheck> {
    let (sub, kept, dropped) = seq.deletion_sequence(w)?;
    let parent = build_kn(seq)?;
    let wl = parent.label_of(KnVertex::Ground(w)).expect("w in W");
    let expected = parent.complex.deletion(wl)?;
    let extra = |i: usize| parent.label_of(KnVertex::Extra(i)).expect("extra vertex");
    let part = kn_with_labels(
        &sub,
        |v| parent.label_of(KnVertex::Ground(v)).expect("ground vertex"),
        |j| extra(kept[j - 1]),
    );
    let cone: VertexMask = dropped.iter().map(|&i| extra(i)).collect();
    let computed = part.join(&SimplicialComplex::full_simplex(cone))?;
    Ok(DeletionCheck {
        sequence: sub,
        cone_indices: dropped,
        cone,
        computed,
        expected,
    })
}
