//! Exhaustive search over the numerical invariants of a Z2^2-action on a
//! minimal surface of general type with `p_g = 0`.
//!
//! Indices follow `R_1, R_2, R_3` with `k_i = K_S.R_i` sorted non-increasing.
//! Internally `m_i = R_{i+1}.R_{i+2}` (the product of the *other* two
//! indices); reports print `(R_1R_2, R_1R_3, R_2R_3)`.

use std::fmt;

use serde::Serialize;

use crate::certificate::Certificate;
use crate::lattice::{index_bound_holds, is_perfect_square};

/// The value of `K_S^2` for which the expected case table is known.
pub const VALIDATED_K2: i64 = 7;

/// Largest `K^2` of a minimal surface of general type with `p_g = q = 0`.
pub const MAX_K2: i64 = 9;

/// Square of each ramification divisor, `R_i^2 = -1`.
pub const R_SQUARE: i64 = -1;

pub type Triple = [i64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    RealizedInoue,
    RealizedDp1,
    ExcludedNumeric,
    ExcludedGeometric,
    Open,
}

impl CaseStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseStatus::RealizedInoue => "realized_inoue",
            CaseStatus::RealizedDp1 => "realized_dp1",
            CaseStatus::ExcludedNumeric => "excluded_numeric",
            CaseStatus::ExcludedGeometric => "excluded_geometric",
            CaseStatus::Open => "open",
        }
    }
}

impl fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumericalCase {
    pub k2: i64,
    pub k: Triple,
    /// `m[i] = R_{i+1}.R_{i+2}`.
    pub m: Triple,
    pub r: Triple,
    pub l: Triple,
    pub k_sigma2: i64,
    pub det_a: i64,
    pub status: CaseStatus,
}

impl NumericalCase {
    /// `(R_1R_2, R_1R_3, R_2R_3)`.
    pub fn reported_m(&self) -> Triple {
        reported(self.m)
    }
}

pub fn reported(m: Triple) -> Triple {
    [m[2], m[1], m[0]]
}

pub fn internal(reported_m: Triple) -> Triple {
    [reported_m[2], reported_m[1], reported_m[0]]
}

/// Dimensions of the invariant and three character subspaces of
/// `H^0(2K_S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EigenspaceDims {
    pub inv: i64,
    pub chi: Triple,
}

impl EigenspaceDims {
    pub fn total(&self) -> i64 {
        self.inv + self.chi.iter().sum::<i64>()
    }
}

impl fmt::Display for EigenspaceDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.inv, self.chi[0], self.chi[1], self.chi[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonIntegral;

/// `inv = (K^2 + k_1 + k_2 + k_3)/4 + 1`, `chi_i = (K^2 + k_i - k_{i+1} - k_{i+2})/4`.
/// The dimensions may be negative; callers decide whether that is admissible.
pub fn eigenspace_dims(k2: i64, k: Triple) -> Result<EigenspaceDims, NonIntegral> {
    let div4 = |v: i64| if v.rem_euclid(4) == 0 { Ok(v / 4) } else { Err(NonIntegral) };
    let inv = div4(k2 + k[0] + k[1] + k[2])? + 1;
    let mut chi = [0; 3];
    for i in 0..3 {
        chi[i] = div4(k2 + k[i] - k[(i + 1) % 3] - k[(i + 2) % 3])?;
    }
    Ok(EigenspaceDims { inv, chi })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KFilter {
    Range,
    Parity,
    EigenspaceIntegrality,
    EigenspaceNegative,
    TwoComposedInvolutions,
    ComposedUnbalanced,
}

impl KFilter {
    pub fn describe(self) -> &'static str {
        match self {
            KFilter::Range => "0 <= k_i <= K^2",
            KFilter::Parity => "k_i has the parity of K^2",
            KFilter::EigenspaceIntegrality => "eigenspace dimensions integral",
            KFilter::EigenspaceNegative => "eigenspace dimensions nonnegative",
            KFilter::TwoComposedInvolutions => "bicanonical map composed with at most one involution",
            KFilter::ComposedUnbalanced => "k_i = K^2 forces k_{i+1} = k_{i+2}",
        }
    }
}

pub fn check_k_triple(k2: i64, k: Triple) -> Result<EigenspaceDims, KFilter> {
    if k.iter().any(|&x| x < 0 || x > k2) {
        return Err(KFilter::Range);
    }
    if k.iter().any(|&x| (x - k2).rem_euclid(2) != 0) {
        return Err(KFilter::Parity);
    }
    let dims = eigenspace_dims(k2, k).map_err(|_| KFilter::EigenspaceIntegrality)?;
    if dims.inv < 0 || dims.chi.iter().any(|&c| c < 0) {
        return Err(KFilter::EigenspaceNegative);
    }
    let composed: Vec<usize> = (0..3).filter(|&i| k[i] == k2).collect();
    if composed.len() > 1 {
        return Err(KFilter::TwoComposedInvolutions);
    }
    if let Some(&i) = composed.first() {
        if k[(i + 1) % 3] != k[(i + 2) % 3] {
            return Err(KFilter::ComposedUnbalanced);
        }
    }
    Ok(dims)
}

/// Non-increasing triples surviving [`check_k_triple`], in descending
/// lexicographic order.
pub fn candidate_k_triples(k2: i64) -> Vec<Triple> {
    k_search(k2).0
}

fn k_search(k2: i64) -> (Vec<Triple>, Vec<(Triple, KFilter)>) {
    let mut kept = Vec::new();
    let mut rejected = Vec::new();
    for a in (0..=k2.max(0)).rev() {
        for b in (0..=a).rev() {
            for c in (0..=b).rev() {
                match check_k_triple(k2, [a, b, c]) {
                    Ok(_) => kept.push([a, b, c]),
                    // parity failures are not worth listing
                    Err(KFilter::Parity) => {}
                    Err(f) => rejected.push(([a, b, c], f)),
                }
            }
        }
    }
    (kept, rejected)
}

/// `det` of the intersection matrix with diagonal `R_i^2 = -1` and
/// off-diagonal products `m`.
pub fn det_a(m: Triple) -> i64 {
    m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + 2 * m[0] * m[1] * m[2] - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MFilter {
    SigmaIntegrality,
    OddPositive,
    EvenL,
    NegativeL,
    PairIndex,
    TripleIndex,
    ResolutionIndex,
    MNef,
    GenusD,
    DetSquare,
}

impl MFilter {
    pub fn describe(self) -> &'static str {
        match self {
            MFilter::SigmaIntegrality => "K_Sigma^2 integral",
            MFilter::OddPositive => "products R_iR_j positive odd",
            MFilter::EvenL => "l_i even (m_i = k_i mod 4)",
            MFilter::NegativeL => "l_i >= 0",
            MFilter::PairIndex => "pairwise index bound",
            MFilter::TripleIndex => "triple index bound",
            MFilter::ResolutionIndex => "index bound for K_W",
            MFilter::MNef => "M^2 >= 0",
            MFilter::GenusD => "p_a(D) >= 1",
            MFilter::DetSquare => "det A a perfect square",
        }
    }
}

impl fmt::Display for MFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MCandidate {
    pub m: Triple,
    pub l: Triple,
    pub k_sigma2: i64,
    pub det_a: i64,
}

/// Runs the filter pipeline on one internal `m` triple; returns the first
/// failing filter.
pub fn check_m_triple(k2: i64, k: Triple, m: Triple) -> Result<MCandidate, MFilter> {
    let r_sum = 3 * R_SQUARE;
    if (k2 + r_sum).rem_euclid(4) != 0 {
        return Err(MFilter::SigmaIntegrality);
    }
    if m.iter().any(|&x| x <= 0 || x % 2 == 0) {
        return Err(MFilter::OddPositive);
    }
    if (0..3).any(|i| (m[i] - k[i]).rem_euclid(4) != 0) {
        return Err(MFilter::EvenL);
    }
    let l = [0, 1, 2].map(|i| (k[i] + 4 - m[i]) / 2);
    if l.iter().any(|&x| x < 0) {
        return Err(MFilter::NegativeL);
    }
    for (i, &mi) in m.iter().enumerate() {
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        // (R_a + R_b)^2 = 2 R_a R_b - 2, D.(R_a + R_b) = k_a + k_b
        if !index_bound_holds(k2, k[a] + k[b], 2 * mi + 2 * R_SQUARE).unwrap_or(false) {
            return Err(MFilter::PairIndex);
        }
    }
    let ksum: i64 = k.iter().sum();
    let msum: i64 = m.iter().sum();
    if !index_bound_holds(k2, ksum, r_sum + 2 * msum).unwrap_or(false) {
        return Err(MFilter::TripleIndex);
    }
    let lsum: i64 = l.iter().sum();
    let k_sigma2 = (k2 + r_sum) / 4 + 6 - lsum;
    let kw_sq = k_sigma2;
    // D.K_W = (D^2 - sum D.B_i)/2 with D^2 = K^2
    let d_kw = (k2 - ksum) / 2;
    if !index_bound_holds(k2, d_kw, kw_sq).unwrap_or(false) {
        return Err(MFilter::ResolutionIndex);
    }
    if kw_sq + 2 * d_kw + k2 < 0 {
        return Err(MFilter::MNef);
    }
    if k2 + d_kw < 0 {
        return Err(MFilter::GenusD);
    }
    let det = det_a(m);
    if !is_perfect_square(det as i128) {
        return Err(MFilter::DetSquare);
    }
    Ok(MCandidate {
        m,
        l,
        k_sigma2,
        det_a: det,
    })
}

/// Permutations of `{0,1,2}` that fix the `k` triple, as index maps
/// `new[i] = old[perm[i]]`.
fn k_symmetries(k: Triple) -> Vec<[usize; 3]> {
    const ALL: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    ALL.into_iter()
        .filter(|p| (0..3).all(|i| k[p[i]] == k[i]))
        .collect()
}

/// Relabels `R_i := R_{perm[i]}`; the product opposite index `i` follows.
pub fn permute_m(m: Triple, perm: [usize; 3]) -> Triple {
    [0, 1, 2].map(|i| m[perm[i]])
}

/// Canonical representative of `m` under the relabelings fixing `k`.
///
/// With `k_1 > k_2 = k_3` the representative has `R_1R_2 <= R_1R_3`; with
/// `k_1 = k_2 > k_3` it has `R_1R_3 >= R_2R_3`. When all three `k_i` agree the
/// lexicographically smallest `(R_1R_2, R_1R_3, R_2R_3)` is used.
pub fn canonical_m(k: Triple, m: Triple) -> Triple {
    let orbit: Vec<Triple> = k_symmetries(k).into_iter().map(|p| permute_m(m, p)).collect();
    let pick = |pred: &dyn Fn(Triple) -> bool| -> Triple {
        orbit
            .iter()
            .copied()
            .filter(|&x| pred(reported(x)))
            .min_by_key(|&x| reported(x))
            .unwrap_or(m)
    };
    if k[0] == k[1] && k[1] == k[2] {
        pick(&|_| true)
    } else if k[1] == k[2] {
        pick(&|r| r[0] <= r[1])
    } else if k[0] == k[1] {
        pick(&|r| r[1] >= r[2])
    } else {
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub k: Triple,
    /// Reported order `(R_1R_2, R_1R_3, R_2R_3)`.
    pub m: Triple,
    pub filter: MFilter,
    pub det_a: i64,
}

/// Largest product the pairwise index bound can admit:
/// `2m - 2 <= (2K^2)^2 / K^2` gives `m <= 2K^2 + 1`.
fn m_search_bound(k2: i64) -> i64 {
    2 * k2.max(1) + 1
}

#[derive(Debug, Clone, Default)]
pub struct MSearch {
    /// Canonical representatives, deduplicated.
    pub accepted: Vec<MCandidate>,
    /// Every survivor before deduplication.
    pub raw_accepted: Vec<MCandidate>,
    pub rejected: Vec<Rejection>,
}

pub fn m_search(k2: i64, k: Triple) -> MSearch {
    let bound = m_search_bound(k2);
    let mut out = MSearch::default();
    let odd: Vec<i64> = (1..=bound).step_by(2).collect();
    for &a in &odd {
        for &b in &odd {
            for &c in &odd {
                let m = internal([a, b, c]);
                match check_m_triple(k2, k, m) {
                    Ok(cand) => out.raw_accepted.push(cand),
                    Err(filter) => out.rejected.push(Rejection {
                        k,
                        m: [a, b, c],
                        filter,
                        det_a: det_a(m),
                    }),
                }
            }
        }
    }
    for cand in &out.raw_accepted {
        if canonical_m(k, cand.m) == cand.m {
            out.accepted.push(*cand);
        }
    }
    out.accepted.sort_by_key(|c| (-c.k_sigma2, reported(c.m)));
    out
}

pub fn enumerate_m_triples(k2: i64, k: Triple) -> Vec<MCandidate> {
    m_search(k2, k).accepted
}

/// Annotation for a surviving case. Geometric exclusions and the open case
/// are recorded here; they never act as filters.
pub fn case_status(k2: i64, k: Triple, reported_m: Triple) -> CaseStatus {
    if k2 != VALIDATED_K2 {
        return CaseStatus::Open;
    }
    match (k, reported_m) {
        ([7, 5, 5], [5, 9, 7]) => CaseStatus::RealizedInoue,
        ([5, 5, 3], [7, 5, 1]) => CaseStatus::RealizedDp1,
        ([5, 5, 3], [3, 5, 1]) | ([5, 5, 3], [7, 1, 1]) => CaseStatus::ExcludedGeometric,
        _ => CaseStatus::Open,
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub k2: i64,
    pub validated: bool,
    pub k_candidates: Vec<Triple>,
    pub k_rejected: Vec<(Triple, KFilter)>,
    pub cases: Vec<NumericalCase>,
    pub rejected: Vec<Rejection>,
}

pub fn classify(k2: i64) -> Classification {
    let (k_candidates, k_rejected) = k_search(k2);
    let mut cases = Vec::new();
    let mut rejected = Vec::new();
    for &k in &k_candidates {
        let search = m_search(k2, k);
        for cand in search.accepted {
            cases.push(NumericalCase {
                k2,
                k,
                m: cand.m,
                r: [R_SQUARE; 3],
                l: cand.l,
                k_sigma2: cand.k_sigma2,
                det_a: cand.det_a,
                status: case_status(k2, k, reported(cand.m)),
            });
        }
        rejected.extend(search.rejected);
    }
    Classification {
        k2,
        validated: k2 == VALIDATED_K2,
        k_candidates,
        k_rejected,
        cases,
        rejected,
    }
}

/// One row of the expected table for `K^2 = 7`:
/// `(k, reported m, l, K_Sigma^2, det A, status)`.
pub type ExpectedCase = (Triple, Triple, Triple, i64, i64, CaseStatus);

pub fn expected_table() -> Vec<ExpectedCase> {
    vec![
        ([7, 5, 5], [5, 9, 7], [2, 0, 2], 3, 784, CaseStatus::RealizedInoue),
        ([5, 5, 3], [7, 5, 1], [4, 2, 0], 1, 144, CaseStatus::RealizedDp1),
        ([5, 5, 3], [3, 5, 1], [4, 2, 2], -1, 64, CaseStatus::ExcludedGeometric),
        ([5, 5, 3], [7, 1, 1], [4, 4, 0], -1, 64, CaseStatus::ExcludedGeometric),
        ([5, 3, 1], [1, 3, 1], [4, 2, 2], -1, 16, CaseStatus::Open),
    ]
}

impl NumericalCase {
    pub fn as_expected(&self) -> ExpectedCase {
        (self.k, self.reported_m(), self.l, self.k_sigma2, self.det_a, self.status)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchGenus {
    Integral(i64),
    NonIntegral,
}

/// Arithmetic genus of `B_i` from
/// `2p_a(B_i) - 2 = (k_i + R_i^2 - k_{i+1} - k_{i+2})/2 + l_{i+1} + l_{i+2} - 4`.
/// `i` is zero-based.
pub fn branch_genus(case: &NumericalCase, i: usize) -> BranchGenus {
    let (a, b) = ((i + 1) % 3, (i + 2) % 3);
    let num = case.k[i] + case.r[i] - case.k[a] - case.k[b];
    if num.rem_euclid(2) != 0 {
        return BranchGenus::NonIntegral;
    }
    let rhs = num / 2 + case.l[a] + case.l[b] - 4;
    if rhs.rem_euclid(2) != 0 {
        return BranchGenus::NonIntegral;
    }
    BranchGenus::Integral(rhs / 2 + 1)
}

/// Whether `2^l_total (1 + m^2)` is a perfect square. For even `l_total` and
/// odd `m` it never is, since `1 + m^2 = 2 mod 8`.
pub fn sign_elimination_check(l_total: u32, m: i64) -> bool {
    let value = (1i128 << l_total) * (1 + (m as i128) * (m as i128));
    is_perfect_square(value)
}

fn fmt3(v: Triple) -> String {
    format!("({}, {}, {})", v[0], v[1], v[2])
}

pub fn describe_case(k: Triple, reported_m: Triple, l: Triple, k_sigma2: i64) -> String {
    format!("k={} m={} l={} K_Sigma^2={}", fmt3(k), fmt3(reported_m), fmt3(l), k_sigma2)
}

/// Checks a classification against the expected table when `K^2 = 7`;
/// otherwise every case is recorded without a verdict.
pub fn certificate(c: &Classification) -> Certificate {
    const SRC: &str = "classification table";
    let mut cert = Certificate::new(format!("numerical cases for K^2 = {}", c.k2));
    let ks = c.k_candidates.iter().map(|k| fmt3(*k)).collect::<Vec<_>>().join(" ");
    if c.validated {
        let want = [[7, 5, 5], [7, 3, 3], [7, 1, 1], [5, 5, 3], [5, 3, 1], [3, 3, 3], [3, 1, 1]];
        let want = want.iter().map(|k| fmt3(*k)).collect::<Vec<_>>().join(" ");
        cert.check_eq("k_candidates", "admissible (k1, k2, k3)", SRC, ks, want);
        let expected = expected_table();
        cert.check_eq("count", "number of cases", SRC, c.cases.len(), expected.len());
        for i in 0..c.cases.len().max(expected.len()) {
            let got = c.cases.get(i).map(|x| {
                format!("{} det A={} {}", describe_case(x.k, x.reported_m(), x.l, x.k_sigma2), x.det_a, x.status)
            });
            let want = expected
                .get(i)
                .map(|(k, m, l, ks2, det, st)| format!("{} det A={det} {st}", describe_case(*k, *m, *l, *ks2)));
            cert.check_eq(
                format!("case.{}", i + 1),
                "case row",
                SRC,
                got.unwrap_or_else(|| "-".into()),
                want.unwrap_or_else(|| "-".into()),
            );
        }
    } else {
        cert.note(format!(
            "Only K^2 = {VALIDATED_K2} has a reference table; these cases are unvalidated."
        ));
        cert.record("k_candidates", "admissible (k1, k2, k3)", SRC, ks);
        for (i, x) in c.cases.iter().enumerate() {
            let row = format!("{} det A={}", describe_case(x.k, x.reported_m(), x.l, x.k_sigma2), x.det_a);
            cert.record(format!("case.{}", i + 1), "case row", SRC, row);
        }
    }
    cert.note("Geometric exclusions and the open case are annotations; only numerical filters remove cases.");
    cert
}

/// Finds the emitted case matching `(k, reported m)`, up to relabeling.
pub fn find_case(cases: &[NumericalCase], k: Triple, reported_m: Triple) -> Option<&NumericalCase> {
    let m = canonical_m(k, internal(reported_m));
    cases.iter().find(|c| c.k == k && c.m == m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenspace_examples() {
        let d = eigenspace_dims(7, [5, 5, 3]).unwrap();
        assert_eq!((d.inv, d.chi), (6, [1, 1, 0]));
        let d = eigenspace_dims(7, [7, 5, 5]).unwrap();
        assert_eq!((d.inv, d.chi), (7, [1, 0, 0]));
        assert_eq!(eigenspace_dims(7, [5, 5, 1]), Err(NonIntegral));
        for k in candidate_k_triples(7) {
            assert_eq!(eigenspace_dims(7, k).unwrap().total(), 8);
        }
    }

    #[test]
    fn k_candidates() {
        let got = candidate_k_triples(7);
        assert_eq!(
            got,
            vec![[7, 5, 5], [7, 3, 3], [7, 1, 1], [5, 5, 3], [5, 3, 1], [3, 3, 3], [3, 1, 1]]
        );
        assert!(got.iter().flatten().all(|x| x % 2 == 1));
        assert!(!got.contains(&[7, 5, 3]));
        assert!(check_k_triple(7, [7, 5, 3]).is_err());
        assert_eq!(check_k_triple(7, [7, 7, 7]), Err(KFilter::TwoComposedInvolutions));
        assert_eq!(check_k_triple(7, [7, 7, 1]), Err(KFilter::EigenspaceIntegrality));
        assert_eq!(check_k_triple(7, [7, 5, 1]), Err(KFilter::EigenspaceNegative));
    }

    #[test]
    fn m_examples() {
        let got = enumerate_m_triples(7, [7, 5, 5]);
        assert_eq!(got.len(), 1);
        assert_eq!(reported(got[0].m), [5, 9, 7]);
        assert_eq!((got[0].l, got[0].k_sigma2, got[0].det_a), ([2, 0, 2], 3, 784));
        assert!(enumerate_m_triples(7, [7, 3, 3]).is_empty());
        let got: Vec<_> = enumerate_m_triples(7, [5, 5, 3])
            .into_iter()
            .map(|c| (reported(c.m), c.l, c.k_sigma2, c.det_a))
            .collect();
        assert_eq!(
            got,
            vec![
                ([7, 5, 1], [4, 2, 0], 1, 144),
                ([3, 5, 1], [4, 2, 2], -1, 64),
                ([7, 1, 1], [4, 4, 0], -1, 64),
            ]
        );
    }

    #[test]
    fn first_failing_filters() {
        assert_eq!(check_m_triple(7, [7, 3, 3], internal([7, 7, 3])), Err(MFilter::TripleIndex));
        assert_eq!(check_m_triple(7, [7, 5, 5], internal([9, 9, 3])), Err(MFilter::DetSquare));
        assert_eq!(check_m_triple(7, [5, 5, 3], internal([3, 5, 5])), Err(MFilter::DetSquare));
        assert_eq!(check_m_triple(7, [5, 5, 3], internal([2, 5, 5])), Err(MFilter::OddPositive));
        assert_eq!(check_m_triple(7, [5, 5, 3], internal([5, 5, 5])), Err(MFilter::EvenL));
        assert_eq!(check_m_triple(8, [5, 5, 3], internal([7, 5, 1])), Err(MFilter::SigmaIntegrality));
    }

    #[test]
    fn classification_table() {
        let c = classify(7);
        assert!(c.validated);
        let got: Vec<_> = c.cases.iter().map(NumericalCase::as_expected).collect();
        assert_eq!(got, expected_table());
        for case in &c.cases {
            for i in 0..3 {
                assert_eq!(2 * case.l[i] + case.m[i], case.k[i] + 4);
                assert_eq!(case.l[i] % 2, 0);
            }
            assert_eq!(case.k_sigma2, 7 - case.l.iter().sum::<i64>());
        }
        assert!(!classify(3).validated);
        assert!(certificate(&c).passed());
        let other = certificate(&classify(3));
        assert!(other.passed());
        assert!(other.rows.iter().all(|r| r.status == crate::RowStatus::Recorded));
    }

    #[test]
    fn branch_genus_examples() {
        let c = classify(7);
        let dp1 = c.cases.iter().find(|x| x.status == CaseStatus::RealizedDp1).unwrap();
        assert_eq!(branch_genus(dp1, 0), BranchGenus::Integral(-1));
        let inoue = c.cases.iter().find(|x| x.status == CaseStatus::RealizedInoue).unwrap();
        assert_eq!(branch_genus(inoue, 1), BranchGenus::Integral(-1));
        for case in &c.cases {
            for i in 0..3 {
                assert!(matches!(branch_genus(case, i), BranchGenus::Integral(_)));
            }
        }
        let odd = NumericalCase { l: [1, 0, 0], ..dp1.clone() };
        assert_eq!(branch_genus(&odd, 1), BranchGenus::NonIntegral);
    }

    #[test]
    fn k_311_increments_divisible_by_four() {
        let k = [3, 1, 1];
        for i in 0..3 {
            let v = k[i] + R_SQUARE - k[(i + 1) % 3] - k[(i + 2) % 3];
            assert_eq!(v.rem_euclid(4), 0);
        }
    }

    #[test]
    fn sign_elimination_examples() {
        assert!(!sign_elimination_check(4, 3));
        assert!(!sign_elimination_check(0, 1));
        // odd exponent can be a square: 2 * (1 + 1) = 4
        assert!(sign_elimination_check(1, 1));
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(reported(canonical_m([7, 5, 5], internal([9, 5, 7]))), [5, 9, 7]);
        assert_eq!(reported(canonical_m([5, 5, 3], internal([7, 1, 5]))), [7, 5, 1]);
        assert_eq!(reported(canonical_m([5, 5, 3], internal([3, 1, 5]))), [3, 5, 1]);
        assert_eq!(reported(canonical_m([5, 3, 1], internal([1, 3, 1]))), [1, 3, 1]);
        assert_eq!(reported(canonical_m([3, 3, 3], internal([5, 3, 1]))), [1, 3, 5]);
    }
}
