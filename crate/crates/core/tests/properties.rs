use golodlab::complex::{
    build_kn, deletion_kn, link_kn, recover_sequence, NonFaceSequence, SimplicialComplex,
};
use golodlab::golod::{canonical_form, theorem_report, verify_kn_homotopy};
use golodlab::homology::{integer_kernel, smith_normal_form, IntegerMatrix};
use golodlab::linalg::Ring;
use golodlab::mask::VertexMask;
use golodlab::taylor::{betti_from_taylor, composite_vanishes, is_minimal_taylor};
use golodlab::zk::{hochster_table, moment_angle_cohomology};
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

/// Greedily keeps the sets that are incomparable with the ones kept so far.
fn antichain(m: u8, raw: &[u64]) -> Vec<VertexMask> {
    let ground = VertexMask::range(m).bits();
    let mut out: Vec<VertexMask> = Vec::new();
    for &bits in raw {
        let s = VertexMask::from_bits(bits & ground);
        if s.is_empty() || out.iter().any(|&c| c.is_subset(s) || s.is_subset(c)) {
            continue;
        }
        out.push(s);
    }
    out
}

fn arb_antichain(max_m: u8) -> impl Strategy<Value = (u8, Vec<VertexMask>)> {
    (1..=max_m, prop::collection::vec(any::<u64>(), 0..8)).prop_map(|(m, raw)| (m, antichain(m, &raw)))
}

fn arb_sequence() -> impl Strategy<Value = NonFaceSequence> {
    (0u8..=5, prop::collection::vec(any::<u64>(), 0..5)).prop_map(|(w, raw)| {
        let ground = VertexMask::range(w);
        let entries = raw
            .into_iter()
            .map(|b| VertexMask::from_bits(b & ground.bits()))
            .collect();
        NonFaceSequence::new(ground, entries).unwrap()
    })
}

fn permute(m: u8, sets: &[VertexMask], perm: &[u8]) -> Vec<VertexMask> {
    assert_eq!(perm.len(), m as usize);
    sets.iter()
        .map(|s| s.iter().map(|v| perm[v as usize - 1]).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn nonfaces_round_trip((m, mnfs) in arb_antichain(7)) {
        let k = SimplicialComplex::from_minimal_nonfaces(m, &mnfs).unwrap();
        let mut sorted = mnfs.clone();
        golodlab::mask::sort_lex(&mut sorted);
        prop_assert_eq!(k.minimal_nonfaces(), sorted);
        let again = SimplicialComplex::from_facets(m, &k.facets()).unwrap();
        prop_assert_eq!(again, k.clone());
        for &f in k.faces() {
            for sub in f.subsets() {
                prop_assert!(k.contains(sub));
            }
        }
    }

    #[test]
    fn taylor_squares_to_zero((_m, mnfs) in arb_antichain(6)) {
        for l in 2..=mnfs.len() {
            prop_assert!(composite_vanishes(&mnfs, l).unwrap());
        }
    }

    #[test]
    fn taylor_betti_matches_hochster((m, mnfs) in arb_antichain(5)) {
        let k = SimplicialComplex::from_minimal_nonfaces(m, &mnfs).unwrap();
        for ring in [Ring::Rationals, Ring::Prime(3)] {
            let taylor = betti_from_taylor(&mnfs, ring).unwrap();
            prop_assert_eq!(&taylor, &hochster_table(&k, ring).tor);
            prop_assert_eq!(taylor.moment_angle_dims(), moment_angle_cohomology(&k, ring).dims);
        }
    }

    #[test]
    fn minimality_routes_agree((_m, mnfs) in arb_antichain(8)) {
        prop_assert!(is_minimal_taylor(&mnfs).routes_agree());
    }

    #[test]
    fn minimal_complexes_are_kn((m, mnfs) in arb_antichain(7)) {
        let k = SimplicialComplex::from_minimal_nonfaces(m, &mnfs).unwrap();
        match recover_sequence(&k) {
            Ok(rec) => prop_assert_eq!(rec.rebuild().unwrap(), k),
            Err(_) => prop_assert!(!is_minimal_taylor(&mnfs).minimal),
        }
    }

    #[test]
    fn kn_links_and_deletions(seq in arb_sequence()) {
        for w in seq.ground().iter() {
            prop_assert!(link_kn(&seq, w).unwrap().agrees());
            prop_assert!(deletion_kn(&seq, w).unwrap().agrees());
        }
    }

    #[test]
    fn kn_homotopy(seq in arb_sequence()) {
        let kn = build_kn(&seq).unwrap();
        prop_assert!(is_minimal_taylor(&kn.complex.minimal_nonfaces()).minimal);
        prop_assert!(verify_kn_homotopy(&seq).unwrap().passed);
    }

    #[test]
    fn reports_are_permutation_invariant(
        (m, mnfs) in arb_antichain(5),
        shuffle in any::<prop::sample::Index>(),
    ) {
        let mut perm: Vec<u8> = (1..=m).collect();
        // a cyclic shift by a random amount, then a swap of the first two
        perm.rotate_left(shuffle.index(m as usize));
        if m > 1 {
            perm.swap(0, 1);
        }
        let image = permute(m, &mnfs, &perm);
        prop_assert_eq!(canonical_form(m, &mnfs), canonical_form(m, &image));
        let a = theorem_report(&SimplicialComplex::from_minimal_nonfaces(m, &mnfs).unwrap());
        let b = theorem_report(&SimplicialComplex::from_minimal_nonfaces(m, &image).unwrap());
        prop_assert_eq!(a.minimal_taylor, b.minimal_taylor);
        prop_assert_eq!(a.cond2_pairwise, b.cond2_pairwise);
        let verdicts = |r: &golodlab::golod::TheoremReport| {
            r.products.iter().map(|p| (p.ring, p.trivial)).collect::<Vec<_>>()
        };
        prop_assert_eq!(verdicts(&a), verdicts(&b));
        prop_assert_eq!(&a.wedge.spheres, &b.wedge.spheres);
        prop_assert_eq!(a.cohomology_free, b.cohomology_free);
        prop_assert!(a.consistent && b.consistent);
    }

    #[test]
    fn smith_form_divisibility(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-9i64..=9, 25)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|r| seed[r * 5..r * 5 + cols].to_vec()).collect();
        let a = IntegerMatrix::from_rows(&data);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.rank, a.rank_over(Ring::Rationals));
        for w in snf.invariant_factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        let kernel = integer_kernel(&a);
        prop_assert_eq!(kernel.cols(), cols - snf.rank);
        prop_assert!(a.mul(&kernel).is_zero());
        prop_assert!(snf.invariant_factors.iter().all(|d| !d.is_zero()));
    }

    #[test]
    fn mask_serde_round_trip(bits in any::<u64>()) {
        let m = VertexMask::from_bits(bits);
        let text = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<VertexMask>(&text).unwrap(), m);
    }
}
