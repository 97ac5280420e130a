//! Acceptance gate. Each criterion prints one `PASS`/`FAIL` line with its
//! measured runtime and bound; the process exits non-zero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use golodlab::complex::SimplicialComplex;
use golodlab::golod::{
    exhaustive_antichains, exhaustive_instances, par_map, random_instances, random_sequences,
    verify_kn_homotopy, verify_theorem, InstanceFilter, RandomConfig, TheoremReport,
};
use golodlab::homology::{
    reduced_chain_complex, smith_normal_form, Grading, IntegerChainComplex, IntegerMatrix,
};
use golodlab::linalg::{Field, PrimeField, Rationals, Ring};
use golodlab::mask::VertexMask;
use golodlab::taylor::{betti_from_taylor, composite_vanishes, private_vertices, unit_entry_scan};
use golodlab::zk::{
    coboundary, cohomology_classes, cup_product, hochster_table, is_coboundary,
    koszul_cochain_complex, moment_angle_cohomology, products_trivial, real_cubical_complex,
    CochainElement, KoszulCell,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn check(cond: bool, detail: String) -> Outcome {
    Outcome { ok: cond, detail }
}

fn run(id: u32, title: &str, bound: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = bound.is_none_or(|b| elapsed <= b);
    let ok = out.ok && in_time;
    let limit = bound.map_or("none".to_string(), |b| format!("{}s", b.as_secs()));
    println!(
        "criterion {id} [{}] {title}: {} ({:.2}s, limit {limit})",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
    );
    ok
}

fn dims(pairs: &[(i32, usize)]) -> BTreeMap<i32, usize> {
    pairs.iter().copied().collect()
}

fn four_cycle() -> SimplicialComplex {
    SimplicialComplex::from_minimal_nonfaces(
        4,
        &[
            VertexMask::from_vertices([1, 3]),
            VertexMask::from_vertices([2, 4]),
        ],
    )
    .unwrap()
}

fn all_rings() -> [Ring; 5] {
    [
        Ring::Integers,
        Ring::Rationals,
        Ring::Prime(2),
        Ring::Prime(3),
        Ring::Prime(5),
    ]
}

fn sphere_laws() -> Outcome {
    for m in 2..=4u8 {
        let k = SimplicialComplex::boundary_simplex(VertexMask::range(m));
        let want = dims(&[(0, 1), (2 * m as i32 - 1, 1)]);
        for ring in [Ring::Rationals, Ring::Prime(2)] {
            let got = moment_angle_cohomology(&k, ring).dims;
            if got != want {
                return fail(format!("Z of boundary of simplex on {m} over {ring}: {got:?}"));
            }
        }
        let z = moment_angle_cohomology(&k, Ring::Integers);
        if z.dims != want || !z.is_torsion_free() {
            return fail(format!("integral Z of boundary of simplex on {m}: {z:?}"));
        }
    }
    for m in 2..=5u8 {
        let k = SimplicialComplex::boundary_simplex(VertexMask::range(m));
        let h = real_cubical_complex(&k).unwrap().homology();
        if !h.is_sphere(m as i32 - 1) {
            return fail(format!("real Z of boundary of simplex on {m}: {h:?}"));
        }
    }
    pass("complex m=2..4 over Q, F2, Z; real m=2..5 over Z")
}

fn join_obstruction_suite() -> Outcome {
    let k = four_cycle();
    let want = dims(&[(0, 1), (3, 2), (6, 1)]);
    for ring in all_rings() {
        let h = moment_angle_cohomology(&k, ring);
        if h.dims != want || !h.is_torsion_free() {
            return fail(format!("dims over {ring}: {:?}", h.dims));
        }
        let v = products_trivial(&k, ring).unwrap();
        if v.trivial || v.witness.as_ref().map(|w| (w.degrees, w.product_degree)) != Some(((3, 3), 6)) {
            return fail(format!("product verdict over {ring}: {v:?}"));
        }
    }
    // the two degree-3 generators multiply to a non-coboundary
    fn certified<F: Field>(f: F, k: &SimplicialComplex) -> bool {
        let classes = cohomology_classes(&f, k);
        let three: Vec<_> = classes.iter().filter(|c| c.degree == 3).collect();
        if three.len() != 2 {
            return false;
        }
        let p = cup_product(k, &three[0].representative, &three[1].representative).unwrap();
        p.degree() == Some(6) && matches!(is_coboundary(k, &p), Ok(None))
    }
    let fields_ok = certified(Rationals, &k)
        && [2, 3, 5]
            .into_iter()
            .all(|p| certified(PrimeField::new(p).unwrap(), &k));
    check(
        fields_ok,
        "dims (1,0,0,2,0,0,1) over Z, Q, F2, F3, F5; x3*y3 not a coboundary over each field".into(),
    )
}

fn triple_oracle() -> Outcome {
    let mut instances = Vec::new();
    for m in 1..=5u8 {
        for mnfs in exhaustive_antichains(m).unwrap() {
            instances.push((m, mnfs));
        }
    }
    let mismatches: Vec<String> = par_map(&instances, |(m, mnfs)| {
        let k = SimplicialComplex::from_minimal_nonfaces(*m, mnfs).unwrap();
        let mut bad = Vec::new();
        for ring in [Ring::Rationals, Ring::Prime(2)] {
            let taylor = betti_from_taylor(mnfs, ring).unwrap();
            let hochster = hochster_table(&k, ring);
            let koszul = moment_angle_cohomology(&k, ring);
            if taylor != hochster.tor
                || taylor.moment_angle_dims() != koszul.dims
                || koszul.by_block != hochster.by_block()
            {
                bad.push(format!("m={m} {mnfs:?} over {ring}"));
            }
        }
        bad
    })
    .into_iter()
    .flatten()
    .collect();
    check(
        mismatches.is_empty(),
        format!(
            "{} antichains on m=1..5, {} mismatches{}",
            instances.len(),
            mismatches.len(),
            mismatches.first().map_or(String::new(), |s| format!(", first {s}"))
        ),
    )
}

/// Re-derives the verdict from the report fields rather than trusting
/// `consistent` alone.
fn decomposed(r: &TheoremReport) -> bool {
    let cond2 = r.cond2_pairwise;
    let every_ring = r.products.len() == 5 && r.products.iter().all(|p| p.trivial == cond2);
    let certificate = r.cohomology_free && r.additive.all() && r.products_trivial();
    let directions = if cond2 {
        r.cohomology_free && r.additive.all() && r.join_obstruction.is_none()
    } else {
        r.join_obstruction.as_ref().is_some_and(|j| j.certified)
            && r.products.iter().all(|p| !p.trivial)
    };
    r.consistent && every_ring && certificate == cond2 && directions
}

fn theorem_suite() -> Outcome {
    let mut complexes = Vec::new();
    for m in 1..=5u8 {
        for inst in exhaustive_instances(m, InstanceFilter::MinimalTaylor, false).unwrap() {
            complexes.push(inst.complex());
        }
    }
    let exhaustive = complexes.len();
    let config = RandomConfig::new(7, InstanceFilter::MinimalTaylor);
    complexes.extend(random_instances(500, config, 20_241).iter().map(|i| i.complex()));
    let reports = par_map(&complexes, verify_theorem);
    let mut bad = 0;
    let (mut golod, mut non_golod) = (0, 0);
    for r in &reports {
        match r {
            Ok(r) if decomposed(r) => {
                if r.cond2_pairwise {
                    golod += 1;
                } else {
                    non_golod += 1;
                }
            }
            _ => bad += 1,
        }
    }
    check(
        bad == 0 && golod > 0 && non_golod > 0,
        format!(
            "{exhaustive} exhaustive + 500 random minimal-Taylor instances, {golod} golod, {non_golod} not, {bad} inconsistent"
        ),
    )
}

fn minimality_equivalence() -> Outcome {
    let mut families = Vec::new();
    for m in 1..=5u8 {
        families.extend(exhaustive_antichains(m).unwrap());
    }
    let exhaustive = families.len();
    let config = RandomConfig::new(8, InstanceFilter::All);
    families.extend(
        random_instances(1000, config, 77)
            .into_iter()
            .map(|i| i.minimal_non_faces),
    );
    let mut minimal = 0;
    let mismatches = families
        .iter()
        .filter(|mnfs| {
            let criterion = private_vertices(mnfs).is_ok();
            minimal += criterion as usize;
            criterion != unit_entry_scan(mnfs).is_none()
        })
        .count();
    check(
        mismatches == 0,
        format!(
            "{exhaustive} exhaustive + 1000 random antichains ({minimal} minimal), {mismatches} mismatches"
        ),
    )
}

fn kn_suite() -> Outcome {
    let seqs = random_sequences(500, 6, 5, 4_2);
    let with_empty = seqs
        .iter()
        .filter(|s| s.entries().iter().any(|e| e.is_empty()))
        .count();
    let with_dup = seqs
        .iter()
        .filter(|s| {
            let e = s.entries();
            (0..e.len()).any(|i| e[i + 1..].contains(&e[i]))
        })
        .count();
    let reports = par_map(&seqs, |s| verify_kn_homotopy(s).map(|r| (r.covers, r.passed)));
    let covering = reports.iter().filter(|r| matches!(r, Ok((true, _)))).count();
    let failures = reports.iter().filter(|r| !matches!(r, Ok((_, true)))).count();
    check(
        failures == 0 && with_empty > 0 && with_dup > 0 && covering > 0 && covering < seqs.len(),
        format!(
            "500 sequences ({covering} covering, {with_empty} with empty entries, {with_dup} with duplicates), {failures} failures"
        ),
    )
}

fn random_complex(rng: &mut ChaCha8Rng, max_m: u8) -> SimplicialComplex {
    let seed = rng.gen();
    random_instances(1, RandomConfig::new(max_m, InstanceFilter::All), seed)[0].complex()
}

/// A homogeneous cochain of 1 to 3 cells whose multidegrees lie in `within`.
fn random_cochain<F: Field>(
    rng: &mut ChaCha8Rng,
    f: &F,
    k: &SimplicialComplex,
    within: VertexMask,
) -> CochainElement<F> {
    let mut cells = Vec::new();
    for &face in k.faces().iter().filter(|f| f.is_subset(within)) {
        for free in (within - face).subsets() {
            cells.push(KoszulCell::new(face, free));
        }
    }
    let degree = cells[rng.gen_range(0..cells.len())].degree();
    cells.retain(|c| c.degree() == degree);
    let mut x = CochainElement::zero(f.clone());
    for _ in 0..rng.gen_range(1..=3) {
        let c = cells[rng.gen_range(0..cells.len())];
        let coeff = f.from_i64(rng.gen_range(1..=4));
        x = x.plus(&CochainElement::cell(f.clone(), c).scale(&coeff)).unwrap();
    }
    x
}

fn sign<F: Field>(f: &F, odd: bool) -> F::Elem {
    if odd {
        f.from_i64(-1)
    } else {
        f.one()
    }
}

/// `d(xy) = dx·y + (-1)^{|x|} x·dy` and `xy = (-1)^{|x||y|} yx`.
fn ring_laws<F: Field>(rng: &mut ChaCha8Rng, f: &F, k: &SimplicialComplex) -> (bool, bool, bool) {
    // mostly complementary supports, so that products rarely vanish for free
    let left = VertexMask::from_bits(rng.gen::<u64>() & k.ground().bits());
    let right = if rng.gen_bool(0.8) { k.ground() - left } else { k.ground() };
    let x = random_cochain(rng, f, k, left);
    let y = random_cochain(rng, f, k, right);
    let (a, b) = (x.degree().unwrap_or(0), y.degree().unwrap_or(0));
    let xy = cup_product(k, &x, &y).unwrap();
    let lhs = coboundary(k, &xy);
    let right = cup_product(k, &x, &coboundary(k, &y)).unwrap().scale(&sign(f, a % 2 == 1));
    let rhs = cup_product(k, &coboundary(k, &x), &y).unwrap().plus(&right).unwrap();
    let yx = cup_product(k, &y, &x).unwrap().scale(&sign(f, a * b % 2 == 1));
    (lhs == rhs, xy == yx, !xy.is_zero() && !lhs.is_zero())
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors from gcds of `k × k` minors.
fn determinant_divisors(a: &IntegerMatrix) -> Vec<BigInt> {
    let mut d_prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=a.rows().min(a.cols()) {
        let mut g = BigInt::zero();
        for rows in index_subsets(a.rows(), k) {
            for cols in index_subsets(a.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| a.get(r, c).clone()).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &d_prev);
        d_prev = g;
    }
    out
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, span: i64) -> IntegerMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-span..=span)).collect())
        .collect();
    let mut m = IntegerMatrix::zeros(rows, cols);
    for (r, row) in data.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            m.set(r, c, BigInt::from(v));
        }
    }
    m
}

/// `C_2 → C_1 → C_0` with the second map built from a kernel basis of the first.
fn random_chain_complex(rng: &mut ChaCha8Rng) -> IntegerChainComplex {
    let (a, b, c) = (rng.gen_range(1..=4), rng.gen_range(1..=5), rng.gen_range(1..=4));
    let d1 = random_matrix(rng, a, b, 3);
    let kernel = golodlab::homology::integer_kernel(&d1);
    let d2 = if kernel.cols() == 0 {
        IntegerMatrix::zeros(b, c)
    } else {
        kernel.mul(&random_matrix(rng, kernel.cols(), c, 3))
    };
    IntegerChainComplex::new(
        Grading::Chain,
        0,
        vec![vec![0; a], vec![0; b], vec![0; c]],
        vec![IntegerMatrix::zeros(0, a), d1, d2],
    )
    .expect("d1 d2 = 0 by construction")
}

fn algebraic_properties() -> Outcome {
    const CASES: usize = 600;
    let mut rng = ChaCha8Rng::seed_from_u64(9_001);
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    // cases where x*y and d(x*y) are both non-zero
    let mut nontrivial = 0;
    let mut note = |name: &'static str, ok: bool| {
        let e = failures.entry(name).or_default();
        *e += (!ok) as usize;
    };
    for _ in 0..CASES {
        let k = random_complex(&mut rng, 6);
        let mnfs = k.minimal_nonfaces();
        let taylor_ok = if mnfs.len() <= 12 { (2..=mnfs.len()).all(|l| composite_vanishes(&mnfs, l).unwrap()) } else { true };
        note("taylor d^2", taylor_ok);
        note("koszul d^2", koszul_cochain_complex(&k).is_complex());
        note("simplicial d^2", reduced_chain_complex(&k).is_complex());
        note("cubical d^2", real_cubical_complex(&k).unwrap().is_complex());

        let (leibniz, commutes, live) = ring_laws(&mut rng, &Rationals, &k);
        note("leibniz Q", leibniz);
        note("commutativity Q", commutes);
        nontrivial += live as usize;
        let f = PrimeField::new([2, 3, 5][rng.gen_range(0..3)]).unwrap();
        let (leibniz, commutes, live) = ring_laws(&mut rng, &f, &k);
        nontrivial += live as usize;
        note("leibniz Fp", leibniz);
        note("commutativity Fp", commutes);

        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = random_matrix(&mut rng, r, c, 6);
        let snf = smith_normal_form(&a);
        let got: Vec<BigInt> = snf.invariant_factors.iter().map(|x| x.abs()).collect();
        note("snf = determinant divisors", got == determinant_divisors(&a));

        let cx = random_chain_complex(&mut rng);
        let h = cx.homology();
        let co = cx.transpose();
        let hc = co.homology();
        let uct = [2u32, 3, 5].into_iter().all(|p| {
            let chain = cx.dims_over(Ring::Prime(p));
            let cochain = co.dims_over(Ring::Prime(p));
            cx.degrees().all(|n| {
                chain.get(&n).copied().unwrap_or(0) == h.uct_dim(Grading::Chain, n, p)
                    && cochain.get(&n).copied().unwrap_or(0) == hc.uct_dim(Grading::Cochain, n, p)
            })
        });
        let q = cx.dims_over(Ring::Rationals);
        note(
            "universal coefficients",
            uct && cx.degrees().all(|n| q.get(&n).copied().unwrap_or(0) == h.betti(n)),
        );
    }
    let bad: Vec<_> = failures.iter().filter(|(_, &n)| n > 0).collect();
    check(
        bad.is_empty(),
        format!(
            "{} properties x {CASES} cases ({nontrivial} of {} product cases with d(xy) != 0), failing: {bad:?}",
            failures.len(),
            2 * CASES
        ),
    )
}

fn main() -> ExitCode {
    let results = [
        run(1, "sphere laws", Some(Duration::from_secs(10)), sphere_laws),
        run(2, "join obstruction on the 4-cycle", Some(Duration::from_secs(1)), join_obstruction_suite),
        run(3, "Taylor = Hochster = Koszul on all antichains m<=5", Some(Duration::from_secs(600)), triple_oracle),
        run(4, "Golodness equivalences", Some(Duration::from_secs(900)), theorem_suite),
        run(5, "minimality criterion = unit-entry scan", None, minimality_equivalence),
        run(6, "K(N) homotopy type and disjointified inclusion", Some(Duration::from_secs(300)), kn_suite),
        run(7, "algebraic property suite", None, algebraic_properties),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
