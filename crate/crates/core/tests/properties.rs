//! Randomized construction properties over path-compliant functions.

use proptest::prelude::*;
use zccs::boolfn::Gbf;
use zccs::construct::{build_ccc, build_zccs, build_zccs_by_concatenation, minimal_s};
use zccs::correlate::code_accf;
use zccs::verify::{check_ccc, check_optimal, check_zccs};

#[derive(Debug, Clone)]
struct Instance {
    f: Gbf,
    deleted: Vec<usize>,
    gamma_at_far_end: bool,
    p: u32,
}

/// A random path of weight-q/2 edges over the kept vertices, plus arbitrary
/// edges touching deleted vertices and arbitrary affine terms.
fn instance() -> impl Strategy<Value = Instance> {
    (
        2usize..=4,
        prop::sample::select(vec![2u32, 4]),
        prop::sample::select(vec![2u32, 3, 5]),
    )
        .prop_flat_map(|(m, q, p)| {
            (
                Just((m, q, p)),
                prop::sample::subsequence((0..m).collect::<Vec<_>>(), 0..m.min(3)),
                Just((0..m).collect::<Vec<usize>>()).prop_shuffle(),
                prop::collection::vec(0u32..q, m * m + m + 1),
                any::<bool>(),
            )
        })
        .prop_map(|((m, q, p), deleted, order, coeffs, far)| {
            let mut f = Gbf::zero(m, q).unwrap();
            let kept: Vec<usize> = order.into_iter().filter(|v| !deleted.contains(v)).collect();
            for w in kept.windows(2) {
                f.add_term(&[w[0], w[1]], (q / 2) as i64).unwrap();
            }
            let mut c = coeffs.into_iter();
            for &d in &deleted {
                for v in 0..m {
                    if v != d {
                        f.add_term(&[d, v], c.next().unwrap() as i64).unwrap();
                    }
                }
            }
            for v in 0..m {
                f.add_term(&[v], c.next().unwrap() as i64).unwrap();
            }
            f.add_term(&[], c.next().unwrap() as i64).unwrap();
            Instance {
                f,
                deleted,
                gamma_at_far_end: far,
                p,
            }
        })
}

fn gamma(inst: &Instance) -> usize {
    let (cert, _) = zccs::construct::prepare(&inst.f, &inst.deleted, None).unwrap();
    let (a, b) = cert.end_vertices();
    if inst.gamma_at_far_end {
        a.max(b)
    } else {
        a.min(b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn both_builders_agree(inst in instance()) {
        let g = Some(gamma(&inst));
        let direct = build_zccs(&inst.f, &inst.deleted, g, inst.p, minimal_s(inst.p)).unwrap();
        let concat = build_zccs_by_concatenation(&inst.f, &inst.deleted, g, inst.p).unwrap();
        prop_assert_eq!(direct, concat);
    }

    #[test]
    fn zccs_is_verified_and_optimal(inst in instance()) {
        let set = build_zccs(&inst.f, &inst.deleted, Some(gamma(&inst)), inst.p, minimal_s(inst.p)).unwrap();
        let z = 1usize << inst.f.num_vars();
        let check = check_zccs(&set, z).unwrap();
        prop_assert!(check.passed(), "witness {:?} for f = {}", check.witness, inst.f);
        prop_assert!(check_optimal(&set, z).unwrap());
        let peak = (set.code_size() * set.length()) as i64;
        prop_assert_eq!(peak, (inst.p as i64) << (inst.f.num_vars() + inst.deleted.len() + 1));
        for code in set.codes() {
            prop_assert!(code_accf(code, code, 0).unwrap().is_int(peak));
        }
    }

    #[test]
    fn ccc_is_verified(inst in instance()) {
        let set = build_ccc(&inst.f, &inst.deleted, Some(gamma(&inst))).unwrap();
        prop_assert!(check_ccc(&set));
    }
}
