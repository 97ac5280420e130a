//! Checking the equivalent forms of Golodness on complexes whose Taylor
//! resolution is minimal, plus the instance families the checks run over.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{build_kn, check_antichain, NonFaceSequence, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{is_homology_iso, reduced_homology, HomologySummary, InclusionVerdict};
use crate::linalg::Ring;
use crate::mask::{sort_lex, VertexMask};
use crate::taylor::{is_minimal_taylor, private_vertices, MinimalityReport};
use crate::zk::{
    hochster_table, moment_angle_cohomology, products_trivial, real_cubical_complex,
    real_hochster_dims, ProductVerdict, CUBICAL_MAX_VERTICES,
};

/// Largest vertex count accepted by exhaustive enumeration.
pub const EXHAUSTIVE_MAX: u8 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseVerdict {
    pub intersecting: bool,
    /// 1-based indices of the first disjoint pair.
    pub witness: Option<(usize, usize)>,
}

/// Whether any two of the given sets meet; the witness is the first
/// disjoint pair `(i, j)`, `i < j`, in lexicographic order of indices.
pub fn pairwise_intersecting(mnfs: &[VertexMask]) -> PairwiseVerdict {
    for i in 0..mnfs.len() {
        for j in i + 1..mnfs.len() {
            if mnfs[i].is_disjoint(mnfs[j]) {
                return PairwiseVerdict {
                    intersecting: false,
                    witness: Some((i + 1, j + 1)),
                };
            }
        }
    }
    PairwiseVerdict {
        intersecting: true,
        witness: None,
    }
}

/// Two disjoint minimal non-faces `N_i`, `N_j` together with the check
/// `K_{N_i ∪ N_j} = ∂Δ^{N_i} * ∂Δ^{N_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinObstruction {
    /// 1-based indices into the lexicographically sorted minimal non-faces.
    pub indices: (usize, usize),
    pub faces: (VertexMask, VertexMask),
    pub certified: bool,
}

fn not_minimal(mnfs: &[VertexMask]) -> Option<Error> {
    private_vertices(mnfs).err().map(|index| Error::NotMinimalTaylor {
        index,
        face: mnfs[index - 1],
    })
}

pub fn join_obstruction(k: &SimplicialComplex) -> Result<Option<JoinObstruction>> {
    let mnfs = k.minimal_nonfaces();
    if let Some(e) = not_minimal(&mnfs) {
        return Err(e);
    }
    let Some((i, j)) = pairwise_intersecting(&mnfs).witness else {
        return Ok(None);
    };
    let (a, b) = (mnfs[i - 1], mnfs[j - 1]);
    let sub = k.full_subcomplex(a | b)?;
    let join = SimplicialComplex::boundary_simplex(a).join(&SimplicialComplex::boundary_simplex(b))?;
    Ok(Some(JoinObstruction {
        indices: (i, j),
        faces: (a, b),
        certified: sub == join,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeSummand {
    #[serde(rename = "I")]
    pub subset: VertexMask,
    /// Degree of `H̃^j(K_I)`.
    pub j: i32,
    pub multiplicity: usize,
    /// `j + |I| + 1`.
    pub sphere_dim: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgePrediction {
    pub summands: Vec<WedgeSummand>,
    /// Sorted `[dimension, multiplicity]` pairs.
    pub spheres: Vec<(i32, usize)>,
    /// Every `H̃^*(K_I; Z)` is torsion-free.
    pub free: bool,
    /// For minimal-Taylor complexes: every `K_I` has the homology of the
    /// predicted sphere (or none). `None` otherwise.
    pub sphere_or_contractible: Option<bool>,
}

/// Predicted homology of `K_I` for a complex with private vertices:
/// `S^{|I| - r_I - 1}` when `I` is the union of the minimal non-faces it
/// contains (`r_I` of them), acyclic otherwise.
pub fn predicted_full_subcomplex(mnfs: &[VertexMask], subset: VertexMask) -> Option<i32> {
    let inside: Vec<_> = mnfs.iter().filter(|n| n.is_subset(subset)).collect();
    let union = inside.iter().fold(VertexMask::EMPTY, |acc, &&n| acc | n);
    (union == subset).then(|| subset.len() as i32 - inside.len() as i32 - 1)
}

pub fn wedge_prediction(k: &SimplicialComplex) -> WedgePrediction {
    let table = hochster_table(k, Ring::Integers);
    let mut summands = Vec::new();
    let mut spheres: BTreeMap<i32, usize> = BTreeMap::new();
    for (&subset, term) in &table.per_subset {
        for (&j, &multiplicity) in &term.dims {
            let sphere_dim = j + subset.len() as i32 + 1;
            summands.push(WedgeSummand {
                subset,
                j,
                multiplicity,
                sphere_dim,
            });
            *spheres.entry(sphere_dim).or_default() += multiplicity;
        }
    }
    summands.sort_by(|a, b| a.subset.lex_cmp(b.subset).then(a.j.cmp(&b.j)));
    let mnfs = k.minimal_nonfaces();
    let sphere_or_contractible = private_vertices(&mnfs).is_ok().then(|| {
        table.per_subset.iter().all(|(&subset, term)| {
            let torsion_free = term.torsion.values().all(Vec::is_empty);
            let expected: BTreeMap<i32, usize> = predicted_full_subcomplex(&mnfs, subset)
                .map(|d| (d, 1))
                .into_iter()
                .collect();
            torsion_free && term.dims == expected
        })
    });
    WedgePrediction {
        summands,
        spheres: spheres.into_iter().collect(),
        free: table.is_torsion_free(),
        sphere_or_contractible,
    }
}

/// Additive comparisons that hold for every complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveChecks {
    /// Koszul cohomology equals the full-subcomplex decomposition in every
    /// degree and multidegree, over `Q` and `F_2`.
    pub koszul_hochster: bool,
    /// Homology of the real moment-angle complex equals
    /// `⊕ H̃_{*-1}(K_I)` over `F_3`; `None` above the size limit.
    pub real: Option<bool>,
}

impl AdditiveChecks {
    pub fn all(&self) -> bool {
        self.koszul_hochster && self.real != Some(false)
    }
}

pub fn additive_checks(k: &SimplicialComplex) -> AdditiveChecks {
    let koszul_hochster = [Ring::Rationals, Ring::Prime(2)].into_iter().all(|ring| {
        let koszul = moment_angle_cohomology(k, ring);
        let hochster = hochster_table(k, ring);
        koszul.by_block == hochster.by_block() && koszul.dims == hochster.unreduced()
    });
    let real = (k.vertex_count() <= CUBICAL_MAX_VERTICES).then(|| {
        let ring = Ring::Prime(3);
        let cubical = real_cubical_complex(k).expect("size checked");
        let computed: BTreeMap<i32, usize> = cubical
            .dims_over(ring)
            .into_iter()
            .filter(|&(_, d)| d > 0)
            .collect();
        computed == real_hochster_dims(k, ring)
    });
    AdditiveChecks {
        koszul_hochster,
        real,
    }
}

/// Everything checked about one complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub m: usize,
    pub minimal_non_faces: Vec<VertexMask>,
    pub minimal_taylor: bool,
    pub minimality: MinimalityReport,
    /// Only minimal-Taylor reports decide Golodness.
    pub definitive: bool,
    pub cond2_pairwise: bool,
    pub disjoint_pair: Option<(usize, usize)>,
    pub join_obstruction: Option<JoinObstruction>,
    /// Products of positive-degree classes over `Z` (the conjunction of the
    /// fields), `Q`, `F_2`, `F_3`, `F_5`, in that order.
    pub products: Vec<ProductVerdict>,
    /// `H^*(Z_K; Z)` is torsion-free.
    pub cohomology_free: bool,
    pub additive: AdditiveChecks,
    pub wedge: WedgePrediction,
    /// Cohomological wedge certificate: free integral cohomology, trivial
    /// products over every ring and matching additive decompositions. This
    /// is not a homotopy equivalence.
    pub wedge_certificate: bool,
    pub consistent: bool,
}

impl TheoremReport {
    pub fn products_trivial(&self) -> bool {
        self.products.iter().all(|p| p.trivial)
    }

    pub fn is_golod(&self) -> bool {
        self.definitive && self.cond2_pairwise
    }
}

/// Checks the equivalence on a complex with a minimal Taylor resolution.
pub fn verify_theorem(k: &SimplicialComplex) -> Result<TheoremReport> {
    if let Some(e) = not_minimal(&k.minimal_nonfaces()) {
        return Err(e);
    }
    Ok(theorem_report(k))
}

/// Like [`verify_theorem`] but accepts any complex; without a minimal
/// Taylor resolution the report is marked non-definitive and `consistent`
/// only covers checks that hold for every complex.
pub fn theorem_report(k: &SimplicialComplex) -> TheoremReport {
    let mnfs = k.minimal_nonfaces();
    let minimality = is_minimal_taylor(&mnfs);
    let minimal_taylor = minimality.minimal;
    let pairwise = pairwise_intersecting(&mnfs);
    let join = if minimal_taylor {
        join_obstruction(k).expect("minimal")
    } else {
        None
    };

    let mut fields = Vec::new();
    for ring in Ring::VERIFIED_FIELDS {
        fields.push(products_trivial(k, ring).expect("field"));
    }
    let integral = ProductVerdict {
        ring: Ring::Integers,
        trivial: fields.iter().all(|v| v.trivial),
        witness: fields.iter().find_map(|v| v.witness.clone()),
    };
    let products: Vec<ProductVerdict> = std::iter::once(integral).chain(fields).collect();
    let all_trivial = products.iter().all(|p| p.trivial);

    let cohomology_free = moment_angle_cohomology(k, Ring::Integers).is_torsion_free();
    let additive = additive_checks(k);
    let wedge = wedge_prediction(k);
    let wedge_certificate =
        cohomology_free && wedge.free && all_trivial && additive.all() && wedge.sphere_or_contractible != Some(false);

    let mut consistent = minimality.routes_agree() && additive.all() && cohomology_free == wedge.free;
    if minimal_taylor {
        let cond2 = pairwise.intersecting;
        consistent &= products.iter().all(|p| p.trivial == cond2);
        consistent &= wedge_certificate == cond2;
        consistent &= wedge.sphere_or_contractible == Some(true);
        if cond2 {
            consistent &= cohomology_free && join.is_none();
        } else {
            consistent &= join.as_ref().is_some_and(|j| j.certified);
        }
    }

    TheoremReport {
        m: k.vertex_count(),
        minimal_non_faces: mnfs,
        minimal_taylor,
        minimality,
        definitive: minimal_taylor,
        cond2_pairwise: pairwise.intersecting,
        disjoint_pair: pairwise.witness,
        join_obstruction: join,
        products,
        cohomology_free,
        additive,
        wedge,
        wedge_certificate,
        consistent,
    }
}

/// Homology of `K(N)` against the sphere-or-contractible dichotomy, and the
/// inclusion `K(M) ⊆ K(N)` for the disjointified sequence `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnHomotopyReport {
    pub covers: bool,
    pub homology: HomologySummary,
    pub homology_ok: bool,
    pub disjointified: Vec<VertexMask>,
    /// Present when the disjointified sequence covers the ground set.
    pub inclusion: Option<InclusionVerdict>,
    pub passed: bool,
}

pub fn verify_kn_homotopy(seq: &NonFaceSequence) -> Result<KnHomotopyReport> {
    let kn = build_kn(seq)?;
    let homology = reduced_homology(&kn.complex);
    let covers = seq.covers_ground();
    let homology_ok = if covers {
        homology.is_sphere(seq.ground().len() as i32 - 1)
    } else {
        homology.is_acyclic()
    };
    let m = seq.disjointify();
    let inclusion = if m.covers_ground() {
        let km = build_kn(&m)?;
        Some(is_homology_iso(&km.complex, &kn.complex)?)
    } else {
        None
    };
    let inclusion_ok = inclusion
        .as_ref()
        .is_none_or(|v| v.is_iso() && v.routes_agree());
    Ok(KnHomotopyReport {
        covers,
        homology,
        homology_ok,
        disjointified: m.entries().to_vec(),
        inclusion,
        passed: homology_ok && inclusion_ok,
    })
}

/// One complex of an instance family, given by its minimal non-faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub m: u8,
    pub minimal_non_faces: Vec<VertexMask>,
}

impl Instance {
    pub fn new(m: u8, mut mnfs: Vec<VertexMask>) -> Self {
        sort_lex(&mut mnfs);
        Instance {
            m,
            minimal_non_faces: mnfs,
        }
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_minimal_nonfaces(self.m, &self.minimal_non_faces)
            .expect("instances hold antichains")
    }

    pub fn is_minimal_taylor(&self) -> bool {
        private_vertices(&self.minimal_non_faces).is_ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceFilter {
    All,
    MinimalTaylor,
}

/// Every antichain of non-empty subsets of `[m]`, the empty one included,
/// each sorted lexicographically; the list is in depth-first order.
pub fn exhaustive_antichains(m: u8) -> Result<Vec<Vec<VertexMask>>> {
    if m > EXHAUSTIVE_MAX {
        return Err(Error::ExhaustiveTooLarge {
            got: m,
            max: EXHAUSTIVE_MAX,
        });
    }
    let sets: Vec<VertexMask> = VertexMask::range(m).subsets().skip(1).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn walk(sets: &[VertexMask], from: usize, current: &mut Vec<VertexMask>, out: &mut Vec<Vec<VertexMask>>) {
        let mut sorted = current.clone();
        sort_lex(&mut sorted);
        out.push(sorted);
        for i in from..sets.len() {
            let s = sets[i];
            if current.iter().all(|&c| !c.is_subset(s) && !s.is_subset(c)) {
                current.push(s);
                walk(sets, i + 1, current, out);
                current.pop();
            }
        }
    }
    walk(&sets, 0, &mut current, &mut out);
    Ok(out)
}

/// Smallest relabeling of the sets under permutations of `[m]`, as a
/// lexicographically sorted list.
pub fn canonical_form(m: u8, mnfs: &[VertexMask]) -> Vec<VertexMask> {
    let mut perm: Vec<u8> = (1..=m).collect();
    let mut best: Option<Vec<VertexMask>> = None;
    loop {
        let mut image: Vec<VertexMask> = mnfs
            .iter()
            .map(|n| n.iter().map(|v| perm[v as usize - 1]).collect())
            .collect();
        sort_lex(&mut image);
        let better = match &best {
            None => true,
            Some(b) => {
                let key = |v: &[VertexMask]| v.iter().map(|x| x.to_vec()).collect::<Vec<_>>();
                key(&image) < key(b)
            }
        };
        if better {
            best = Some(image);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Exhaustive family on exactly `m` vertices.
pub fn exhaustive_instances(m: u8, filter: InstanceFilter, dedup: bool) -> Result<Vec<Instance>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mnfs in exhaustive_antichains(m)? {
        let inst = Instance::new(m, mnfs);
        if filter == InstanceFilter::MinimalTaylor && !inst.is_minimal_taylor() {
            continue;
        }
        if dedup && !seen.insert(canonical_form(m, &inst.minimal_non_faces)) {
            continue;
        }
        out.push(inst);
    }
    Ok(out)
}

/// Parameters of the random antichain generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub max_m: u8,
    /// Upper bound on the number of minimal non-faces.
    pub max_r: usize,
    /// Upper bound on the size of each minimal non-face.
    pub max_size: usize,
    pub filter: InstanceFilter,
}

impl RandomConfig {
    pub fn new(max_m: u8, filter: InstanceFilter) -> Self {
        RandomConfig {
            max_m,
            max_r: max_m as usize + 2,
            max_size: max_m as usize,
            filter,
        }
    }
}

/// A seeded stream of instances.
///
/// The vertex count is uniform in `1..=max_m` and the number of sets uniform
/// in `0..=max_r`. Without a filter, sets of uniform size are drawn and
/// kept when incomparable with the ones before. With the minimal-Taylor
/// filter each `N_i` gets its own private vertex plus a random subset of the
/// shared vertices, so every instance qualifies.
pub fn random_instances(count: usize, config: RandomConfig, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng, config)).collect()
}

fn random_instance(rng: &mut ChaCha8Rng, config: RandomConfig) -> Instance {
    let m = rng.gen_range(1..=config.max_m.max(1));
    let mut vertices: Vec<u8> = (1..=m).collect();
    match config.filter {
        InstanceFilter::MinimalTaylor => {
            let r = rng.gen_range(0..=config.max_r.min(m as usize));
            vertices.shuffle(rng);
            let (private, shared) = vertices.split_at(r);
            let mnfs = private
                .iter()
                .map(|&a| {
                    let extra = rng.gen_range(0..=shared.len().min(config.max_size.saturating_sub(1)));
                    shared
                        .choose_multiple(rng, extra)
                        .copied()
                        .collect::<VertexMask>()
                        .insert(a)
                })
                .collect();
            Instance::new(m, mnfs)
        }
        InstanceFilter::All => {
            let r = rng.gen_range(0..=config.max_r);
            let mut mnfs: Vec<VertexMask> = Vec::new();
            for _ in 0..r {
                let size = rng.gen_range(1..=config.max_size.min(m as usize).max(1));
                let s: VertexMask = vertices.choose_multiple(rng, size).copied().collect();
                if mnfs.iter().all(|&c| !c.is_subset(s) && !s.is_subset(c)) {
                    mnfs.push(s);
                }
            }
            debug_assert!(check_antichain(&mnfs).is_ok());
            Instance::new(m, mnfs)
        }
    }
}

/// A seeded stream of sequences with `|W| ≤ max_w` and `r ≤ max_r`; entries
/// may be empty or repeated.
pub fn random_sequences(count: usize, max_w: u8, max_r: usize, seed: u64) -> Vec<NonFaceSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let w = rng.gen_range(0..=max_w);
            let ground = VertexMask::range(w);
            let r = rng.gen_range(0..=max_r);
            let mut entries: Vec<VertexMask> = Vec::with_capacity(r);
            for _ in 0..r {
                let e = if !entries.is_empty() && rng.gen_bool(0.15) {
                    entries[rng.gen_range(0..entries.len())]
                } else if rng.gen_bool(0.1) {
                    VertexMask::EMPTY
                } else {
                    VertexMask::from_bits(rng.gen::<u64>() & ground.bits())
                };
                entries.push(e);
            }
            NonFaceSequence::new(ground, entries).expect("entries inside ground")
        })
        .collect()
}

/// Worker count from `GOLODLAB_THREADS`, when set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("GOLODLAB_THREADS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&n| n > 0)
}

/// Maps `f` over `items` on a worker pool, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

/// Counts over a batch of reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub instances: usize,
    pub minimal_taylor: usize,
    pub golod: usize,
    pub non_golod: usize,
    pub inconsistent: usize,
}

impl VerifySummary {
    pub fn from_reports<'a>(reports: impl IntoIterator<Item = &'a TheoremReport>) -> Self {
        let mut s = VerifySummary::default();
        for r in reports {
            s.instances += 1;
            if r.minimal_taylor {
                s.minimal_taylor += 1;
                if r.cond2_pairwise {
                    s.golod += 1;
                } else {
                    s.non_golod += 1;
                }
            }
            if !r.consistent {
                s.inconsistent += 1;
            }
        }
        s
    }
}
