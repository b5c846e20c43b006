use std::collections::BTreeSet;

use bidouble::classify::{self, classify, expected_table, CaseStatus, KFilter, MFilter};

type Key = ([i64; 3], Vec<[i64; 3]>);

/// Oracle written directly in terms of the products `R_iR_j`, without the
/// filter pipeline or the canonical labeling. Each survivor is keyed by its
/// `k` and the orbit of `(R1R2, R1R3, R2R3)` under relabelings fixing `k`.
fn oracle(k2: i64) -> BTreeSet<Key> {
    let mut out = BTreeSet::new();
    for k1 in (1..=k2).step_by(2) {
        for k2_ in (1..=k1).step_by(2) {
            for k3 in (1..=k2_).step_by(2) {
                let k = [k1, k2_, k3];
                let s = k2 + k1 + k2_ + k3;
                let chis = [k1 - k2_ - k3, k2_ - k1 - k3, k3 - k1 - k2_].map(|d| k2 + d);
                if s % 4 != 0 || chis.iter().any(|c| c % 4 != 0 || *c < 0) {
                    continue;
                }
                if k.iter().filter(|&&x| x == k2).count() > 1 || (k1 == k2 && k2_ != k3) {
                    continue;
                }
                for r12 in (1..=15).step_by(2) {
                    for r13 in (1..=15).step_by(2) {
                        for r23 in (1..=15).step_by(2) {
                            if survives(k2, k, r12, r13, r23) {
                                out.insert((k, orbit(k, [r12, r13, r23])));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn survives(k2: i64, k: [i64; 3], r12: i64, r13: i64, r23: i64) -> bool {
    // R_i.R_j meets K_S in l-even steps: 2 l_i = k_i + 4 - R_{i+1}R_{i+2}
    let l1 = k[0] + 4 - r23;
    let l2 = k[1] + 4 - r13;
    let l3 = k[2] + 4 - r12;
    if [l1, l2, l3].iter().any(|&x| x < 0 || x % 4 != 0) {
        return false;
    }
    let (l1, l2, l3) = (l1 / 2, l2 / 2, l3 / 2);
    let idx = |dc: i64, cc: i64| cc * k2 <= dc * dc;
    if !idx(k[0] + k[1], 2 * r12 - 2) || !idx(k[0] + k[2], 2 * r13 - 2) || !idx(k[1] + k[2], 2 * r23 - 2) {
        return false;
    }
    if !idx(k[0] + k[1] + k[2], -3 + 2 * (r12 + r13 + r23)) {
        return false;
    }
    let kw2 = k2 - l1 - l2 - l3;
    let dkw = (k2 - k[0] - k[1] - k[2]) / 2;
    if !idx(dkw, kw2) || kw2 + 2 * dkw + k2 < 0 || k2 + dkw < 0 {
        return false;
    }
    let det = r12 * r12 + r13 * r13 + r23 * r23 + 2 * r12 * r13 * r23 - 1;
    let root = (det as f64).sqrt().round() as i64;
    root * root == det
}

fn orbit(k: [i64; 3], r: [i64; 3]) -> Vec<[i64; 3]> {
    // r = (R1R2, R1R3, R2R3); relabel R by every permutation fixing k
    let pair = |i: usize, j: usize| match (i.min(j), i.max(j)) {
        (0, 1) => r[0],
        (0, 2) => r[1],
        _ => r[2],
    };
    let mut out = BTreeSet::new();
    for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        if (0..3).all(|i| k[p[i]] == k[i]) {
            out.insert([pair(p[0], p[1]), pair(p[0], p[2]), pair(p[1], p[2])]);
        }
    }
    out.into_iter().collect()
}

#[test]
fn classification_matches_oracle() {
    let got: BTreeSet<Key> = classify(7)
        .cases
        .iter()
        .map(|c| (c.k, orbit(c.k, c.reported_m())))
        .collect();
    assert_eq!(got, oracle(7));
    assert_eq!(classify(7).cases.len(), 5);
}

#[test]
fn table_matches_expected() {
    let got: Vec<_> = classify(7).cases.iter().map(|c| c.as_expected()).collect();
    assert_eq!(got, expected_table());
    let statuses: Vec<_> = got.iter().map(|r| r.5).collect();
    assert_eq!(
        statuses,
        [
            CaseStatus::RealizedInoue,
            CaseStatus::RealizedDp1,
            CaseStatus::ExcludedGeometric,
            CaseStatus::ExcludedGeometric,
            CaseStatus::Open
        ]
    );
}

#[test]
fn candidate_k_lists() {
    let ks: BTreeSet<_> = classify::candidate_k_triples(7).into_iter().collect();
    let composed: BTreeSet<_> = [[7, 1, 1], [7, 3, 3], [7, 5, 5]].into_iter().collect();
    let other: BTreeSet<_> = [[3, 1, 1], [3, 3, 3], [5, 3, 1], [5, 5, 3]].into_iter().collect();
    assert_eq!(ks.iter().filter(|k| k[0] == 7).copied().collect::<BTreeSet<_>>(), composed);
    assert_eq!(ks.iter().filter(|k| k[0] != 7).copied().collect::<BTreeSet<_>>(), other);
    let c = classify(7);
    assert!(c.k_rejected.iter().any(|(k, f)| *k == [7, 7, 7] && *f == KFilter::TwoComposedInvolutions));
}

#[test]
fn traced_rejections() {
    let c = classify(7);
    let find = |k: [i64; 3], m: [i64; 3]| {
        c.rejected
            .iter()
            .find(|r| r.k == k && r.m == m)
            .unwrap_or_else(|| panic!("{k:?} {m:?} not traced"))
    };
    assert_eq!(find([7, 3, 3], [7, 7, 3]).filter, MFilter::TripleIndex);
    let r = find([7, 5, 5], [9, 9, 3]);
    assert_eq!((r.filter, r.det_a), (MFilter::DetSquare, 656));
    let r = find([5, 5, 3], [3, 5, 5]);
    assert_eq!((r.filter, r.det_a), (MFilter::DetSquare, 208));
    for (_, m, _, _, det, _) in expected_table() {
        assert_eq!(classify::det_a(classify::internal(m)), det);
        assert!(bidouble::lattice::is_perfect_square(det.into()));
    }
}

#[test]
fn unvalidated_k2_runs() {
    for k2 in 1..=9 {
        let c = classify(k2);
        assert_eq!(c.validated, k2 == 7);
        if k2 != 7 {
            assert!(c.cases.iter().all(|x| x.status == CaseStatus::Open));
        }
    }
}
