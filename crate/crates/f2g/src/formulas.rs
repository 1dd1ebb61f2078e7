//! Closed-form order predictions for the distinguished subgroups of V(FG),
//! computed from a numeric profile of (G, H, D). Everything here is pure
//! arithmetic on subgroup orders; the brute-force side lives in the harness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{block_subgroup, AbelianTwoGroup, InvolutionSpec, SubgroupOfG};

/// The subgroup orders every prediction is a function of.
#[derive(Clone, Debug, Serialize)]
pub struct GroupProfile {
    /// |G|
    pub g: u64,
    /// |G^{2^i}| for i = 0..=exponent_log
    pub g_pow: Vec<u64>,
    /// |G[2]|
    pub g_tor2: u64,
    /// |G^2[2]|
    pub g_sq_tor2: u64,
    /// |G_eta| = |H[2]| * |D|
    pub g_eta: u64,
    /// |H|
    pub h: u64,
    /// |H[2]|
    pub h_tor2: u64,
    /// |H[4]|
    pub h_tor4: u64,
    /// |H^{2^i}[2]| for i = 0..=exponent_log
    pub h_pow_tor2: Vec<u64>,
    /// |D|
    pub d: u64,
    /// |D^{2^i}| for i = 0..=exponent_log
    pub d_pow: Vec<u64>,
}

impl GroupProfile {
    pub fn new(group: &AbelianTwoGroup, spec: &InvolutionSpec) -> Self {
        Self::from_blocks(group, spec.h_block(), spec.d_block())
    }

    /// Profile for an arbitrary split of the generator positions into an
    /// inverted block H and a fixed block D (used by the non-canonical
    /// side-suite, where the split is taken verbatim).
    pub fn from_blocks(group: &AbelianTwoGroup, h_block: &[usize], d_block: &[usize]) -> Self {
        let levels = group.exponent_log() + 1;
        let full = SubgroupOfG::full(group);
        let h_sub = block_subgroup(group, h_block);
        let d_sub = block_subgroup(group, d_block);
        let g_pow: Vec<u64> = (0..levels)
            .map(|i| full.power(group, i).order() as u64)
            .collect();
        let h_pow_tor2: Vec<u64> = (0..levels)
            .map(|i| h_sub.power(group, i).torsion(group, 1).order() as u64)
            .collect();
        let d_pow: Vec<u64> = (0..levels)
            .map(|i| d_sub.power(group, i).order() as u64)
            .collect();
        let h_tor2 = h_sub.torsion(group, 1).order() as u64;
        let d = d_sub.order() as u64;
        Self {
            g: group.order() as u64,
            g_tor2: full.torsion(group, 1).order() as u64,
            g_sq_tor2: full.power(group, 1).torsion(group, 1).order() as u64,
            g_eta: h_tor2 * d,
            h: h_sub.order() as u64,
            h_tor2,
            h_tor4: h_sub.torsion(group, 2).order() as u64,
            h_pow_tor2,
            d,
            d_pow,
            g_pow,
        }
    }
}

/// Which reading of the |S_eta^2| exponent to use: the stated formula uses
/// |H[2]|, the derivation uses |H^2[2]|. They agree on canonical splits and
/// can differ (the stated one even going non-integral) on raw ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum T2Variant {
    #[serde(rename = "t2_statement")]
    Statement,
    #[serde(rename = "t2_proof")]
    Proof,
}

impl T2Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            T2Variant::Statement => "t2_statement",
            T2Variant::Proof => "t2_proof",
        }
    }
}

impl std::str::FromStr for T2Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t2_statement" => Ok(T2Variant::Statement),
            "t2_proof" => Ok(T2Variant::Proof),
            other => Err(Error::Parse(format!(
                "unknown variant {other:?}; expected t2_statement or t2_proof"
            ))),
        }
    }
}

/// A predicted order. `log2` is None when the formula evaluates to a
/// non-integral or negative exponent (possible only for the stated t2
/// variant on non-canonical splits); `value` is additionally None when the
/// order does not fit in u64.
#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<&'static str>,
    pub log2: Option<i64>,
    pub value: Option<u64>,
}

impl Prediction {
    fn from_log(name: &str, variant: Option<&'static str>, log2: Option<i64>) -> Self {
        let value = match log2 {
            Some(l) if (0..64).contains(&l) => Some(1u64 << l),
            _ => None,
        };
        Self {
            name: name.to_string(),
            variant,
            log2,
            value,
        }
    }
}

fn half(n: i128) -> Option<i64> {
    if n % 2 == 0 {
        Some((n / 2) as i64)
    } else {
        None
    }
}

fn nonneg(l: Option<i64>) -> Option<i64> {
    l.filter(|&x| x >= 0)
}

/// log2 |S_eta| = (|G| + |H[2]||D|)/2 - 1.
pub fn t1(p: &GroupProfile) -> Option<i64> {
    nonneg(half(p.g as i128 + (p.h_tor2 * p.d) as i128).map(|x| x - 1))
}

/// log2 |S_eta^2| = (|G^2| - |D^2|(c - 2))/2 - 1 with c = |H[2]| (statement)
/// or c = |H^2[2]| (proof).
pub fn t2(p: &GroupProfile, variant: T2Variant) -> Option<i64> {
    let c = match variant {
        T2Variant::Statement => p.h_tor2,
        T2Variant::Proof => p.h_pow_tor2[1],
    } as i128;
    nonneg(half(p.g_pow[1] as i128 - p.d_pow[1] as i128 * (c - 2)).map(|x| x - 1))
}

/// log2 |S_eta[2]| = (|G| - |G^2| + |H[2]|(|D| + |D^2|) - 2|D^2|)/2.
pub fn t3(p: &GroupProfile) -> Option<i64> {
    nonneg(half(
        p.g as i128 - p.g_pow[1] as i128 + (p.h_tor2 * (p.d + p.d_pow[1])) as i128
            - 2 * p.d_pow[1] as i128,
    ))
}

/// log2 |V_eta| = log2 |H[2]| + (|G| + |H[2]||D|)/2 - |D^2|.
pub fn v_eta_log(p: &GroupProfile) -> Option<i64> {
    nonneg(
        half(p.g as i128 + (p.h_tor2 * p.d) as i128)
            .map(|x| x + p.h_tor2.trailing_zeros() as i64 - p.d_pow[1] as i64),
    )
}

/// log2 |V_eta[2]| = log2 |T| + log2 |V(FD)[2]| + log2 |W[2]|. (The three
/// factors are direct and their ranks sum to t3; the published statement
/// names V(FG)[2] here, which already contains the other two factors and
/// cannot be a direct complement.)
pub fn v_eta_tor2_log(p: &GroupProfile) -> Option<i64> {
    Some(t_log(p) + vd_tor2_log(p) + w_tor2_log(p)?)
}

/// log2 |V(FD)[2]| = |D| - |D^2|.
pub fn vd_tor2_log(p: &GroupProfile) -> i64 {
    (p.d - p.d_pow[1]) as i64
}

/// log2 |W^{2^i}| = (|G^{2^i}| - |H^{2^i}[2]||D^{2^i}|)/2.
pub fn w_pow_log(p: &GroupProfile, i: usize) -> Option<i64> {
    nonneg(half(
        p.g_pow[i] as i128 - (p.h_pow_tor2[i] * p.d_pow[i]) as i128,
    ))
}

/// log2 |W[2]| = (|G| - |G^2| - |H[2]|(|D| - |D^2|))/2.
pub fn w_tor2_log(p: &GroupProfile) -> Option<i64> {
    nonneg(half(
        p.g as i128 - p.g_pow[1] as i128 - (p.h_tor2 * (p.d - p.d_pow[1])) as i128,
    ))
}

/// log2 |V(FG)| = |G| - 1.
pub fn v_log(p: &GroupProfile) -> i64 {
    p.g as i64 - 1
}

/// log2 |V(FG)[2]| = |G| - |G^2|.
pub fn v_tor2_log(p: &GroupProfile) -> i64 {
    (p.g - p.g_pow[1]) as i64
}

/// log2 |T(FG)| = (|H[2]| - 1)|D|.
pub fn t_log(p: &GroupProfile) -> i64 {
    ((p.h_tor2 - 1) * p.d) as i64
}

/// log2 |1 + I_FP(P[2])| for P = H[2] x D: |H[2]||D| - |D^2|.
pub fn lemma_p_two_torsion_log(p: &GroupProfile) -> i64 {
    (p.h_tor2 * p.d - p.d_pow[1]) as i64
}

/// Canonical-involution specialization:
/// log2 |V_*| = log2 |G^2[2]| + (|G| + |G[2]|)/2 - 1.
pub fn v_star_log(p: &GroupProfile) -> Option<i64> {
    nonneg(
        half(p.g as i128 + p.g_tor2 as i128)
            .map(|x| x - 1 + p.g_sq_tor2.trailing_zeros() as i64),
    )
}

/// |Xi| = (|G| - |G_eta|)/2.
pub fn xi_count(p: &GroupProfile) -> u64 {
    (p.g - p.g_eta) / 2
}

/// |Xi_0| = (|H[4]| - |H[2]|)|D|/2.
pub fn xi0_count(p: &GroupProfile) -> u64 {
    (p.h_tor4 - p.h_tor2) * p.d / 2
}

/// Number of G[2]-orbits on Xi_1: (|G^2| - |H^2[2]||D^2|)/2.
pub fn xi_bar_count(p: &GroupProfile) -> u64 {
    (p.g_pow[1] - p.h_pow_tor2[1] * p.d_pow[1]) / 2
}

/// All predictions for one case, with stable names.
pub fn predictions(p: &GroupProfile, canonical: bool) -> Vec<Prediction> {
    let mut out = vec![
        Prediction::from_log("v_order", None, Some(v_log(p))),
        Prediction::from_log("s_order", None, t1(p)),
        Prediction::from_log(
            "s_squares_order",
            Some(T2Variant::Statement.as_str()),
            t2(p, T2Variant::Statement),
        ),
        Prediction::from_log(
            "s_squares_order",
            Some(T2Variant::Proof.as_str()),
            t2(p, T2Variant::Proof),
        ),
        Prediction::from_log("s_tor2_order", None, t3(p)),
        Prediction::from_log("v_eta_order", None, v_eta_log(p)),
        Prediction::from_log("v_eta_tor2_order", None, v_eta_tor2_log(p)),
        Prediction::from_log("v_tor2_order", None, Some(v_tor2_log(p))),
        Prediction::from_log("vd_tor2_order", None, Some(vd_tor2_log(p))),
        Prediction::from_log("t_order", None, Some(t_log(p))),
        Prediction::from_log("w_tor2_order", None, w_tor2_log(p)),
        Prediction::from_log("p_two_torsion_order", None, Some(lemma_p_two_torsion_log(p))),
        Prediction::from_log("xi_count", None, log2_exact(xi_count(p))),
        Prediction::from_log("xi0_count", None, log2_exact(xi0_count(p))),
        Prediction::from_log("xi_bar_count", None, log2_exact(xi_bar_count(p))),
    ];
    for i in 0..p.g_pow.len() {
        out.push(Prediction::from_log(
            &format!("w_pow_order_{i}"),
            None,
            w_pow_log(p, i),
        ));
    }
    if canonical {
        out.push(Prediction::from_log("v_star_order", None, v_star_log(p)));
    }
    out
}

// The xi counts are plain counts, not necessarily powers of two; reuse the
// Prediction shape by storing the exact value and a log only when it exists.
fn log2_exact(n: u64) -> Option<i64> {
    if n.is_power_of_two() {
        Some(n.trailing_zeros() as i64)
    } else {
        None
    }
}

/// One row of the formula ledger emitted alongside reports.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaRow {
    pub id: &'static str,
    pub expression: &'static str,
}

pub fn formula_table() -> Vec<FormulaRow> {
    let rows = [
        ("v_order", "|V(FG)| = 2^(|G| - 1)"),
        ("s_order", "|S_eta| = 2^((|G| + |H[2]||D|)/2 - 1)"),
        (
            "s_squares_order/t2_statement",
            "|S_eta^2| = 2^((|G^2| - |D^2|(|H[2]| - 2))/2 - 1)",
        ),
        (
            "s_squares_order/t2_proof",
            "|S_eta^2| = 2^((|G^2| - |D^2|(|H^2[2]| - 2))/2 - 1)",
        ),
        (
            "s_tor2_order",
            "|S_eta[2]| = 2^((|G| - |G^2| + |H[2]|(|D| + |D^2|) - 2|D^2|)/2)",
        ),
        (
            "v_eta_order",
            "|V_eta| = |H[2]| * 2^((|G| + |H[2]||D|)/2 - |D^2|)",
        ),
        (
            "v_eta_tor2_order",
            "|V_eta[2]| = |T(FG)| * |V(FD)[2]| * |W(FG)[2]| = 2^t3",
        ),
        ("vd_tor2_order", "|V(FD)[2]| = 2^(|D| - |D^2|)"),
        ("v_tor2_order", "|V(FG)[2]| = 2^(|G| - |G^2|)"),
        ("t_order", "|T(FG)| = 2^((|H[2]| - 1)|D|)"),
        (
            "w_pow_order_i",
            "|W(FG)^(2^i)| = 2^((|G^(2^i)| - |H^(2^i)[2]||D^(2^i)|)/2)",
        ),
        (
            "w_tor2_order",
            "|W(FG)[2]| = 2^((|G| - |G^2| - |H[2]|(|D| - |D^2|))/2)",
        ),
        (
            "p_two_torsion_order",
            "|1 + I_FP(P[2])| = 2^(|H[2]||D| - |D^2|), P = H[2] x D",
        ),
        (
            "v_star_order",
            "|V_*(FG)| = |G^2[2]| * 2^((|G| + |G[2]|)/2 - 1)  (canonical eta)",
        ),
        ("xi_count", "|Xi| = (|G| - |G_eta|)/2"),
        ("xi0_count", "|Xi_0| = (|H[4]| - |H[2]|)|D|/2"),
        ("xi_bar_count", "|Xi_bar| = (|G^2| - |H^2[2]||D^2|)/2"),
        (
            "sandling_order",
            "|u_beta| = min over beta_i != 0 of q_i / 2^floor(log2 beta_i)",
        ),
    ];
    rows.iter()
        .map(|&(id, expression)| FormulaRow { id, expression })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::canonicalize_involution;

    fn profile(orders: &[u64], inverted: &[usize]) -> GroupProfile {
        let g = AbelianTwoGroup::new(orders.to_vec()).unwrap();
        let spec = canonicalize_involution(&g, &inverted.iter().copied().collect()).unwrap();
        GroupProfile::new(&g, &spec)
    }

    #[test]
    fn profile_examples() {
        let p = profile(&[4], &[0]);
        assert_eq!((p.g, p.h, p.d), (4, 4, 1));
        assert_eq!(p.g_pow, vec![4, 2, 1]);
        assert_eq!(p.h_pow_tor2, vec![2, 2, 1]);
        assert_eq!(p.d_pow, vec![1, 1, 1]);
        assert_eq!((p.g_tor2, p.g_sq_tor2, p.g_eta, p.h_tor4), (2, 2, 2, 4));

        let p = profile(&[4, 2], &[0]);
        assert_eq!((p.g, p.h, p.d), (8, 4, 2));
        assert_eq!(p.g_eta, 4);
    }

    #[test]
    fn c4_canonical_predictions() {
        let p = profile(&[4], &[0]);
        assert_eq!(t1(&p), Some(2));
        assert_eq!(t2(&p, T2Variant::Statement), Some(0));
        assert_eq!(t2(&p, T2Variant::Proof), Some(0));
        assert_eq!(t3(&p), Some(2));
        assert_eq!(v_eta_log(&p), Some(3));
        assert_eq!(v_star_log(&p), Some(3));
        assert_eq!(w_pow_log(&p, 0), Some(1));
        assert_eq!(w_pow_log(&p, 1), Some(0));
        assert_eq!(w_tor2_log(&p), Some(1));
        assert_eq!(t_log(&p), 1);
        assert_eq!(v_tor2_log(&p), 2);
        assert_eq!(v_eta_tor2_log(&p), t3(&p));
    }

    #[test]
    fn v_eta_tor2_equals_t3() {
        for (orders, inverted) in [
            (vec![4u64], vec![0usize]),
            (vec![4, 2], vec![0]),
            (vec![8, 4, 2], vec![0, 1]),
            (vec![16, 2], vec![0]),
            (vec![4, 4], vec![]),
        ] {
            let p = profile(&orders, &inverted);
            assert_eq!(v_eta_tor2_log(&p), t3(&p), "{orders:?} {inverted:?}");
        }
    }

    #[test]
    fn t3_is_t1_minus_t2_proof() {
        for (orders, inverted) in [
            (vec![4u64], vec![0usize]),
            (vec![4, 2], vec![0]),
            (vec![8, 2], vec![0]),
            (vec![8, 4, 2], vec![0, 1]),
            (vec![16, 2], vec![0]),
        ] {
            let p = profile(&orders, &inverted);
            assert_eq!(
                t3(&p),
                Some(t1(&p).unwrap() - t2(&p, T2Variant::Proof).unwrap()),
                "{orders:?} {inverted:?}"
            );
        }
    }

    #[test]
    fn variants_agree_on_canonical_splits() {
        for (orders, inverted) in [
            (vec![4u64, 2], vec![0usize]),
            (vec![8, 4], vec![0, 1]),
            (vec![8, 4, 2], vec![0]),
        ] {
            let p = profile(&orders, &inverted);
            assert_eq!(t2(&p, T2Variant::Statement), t2(&p, T2Variant::Proof));
        }
    }

    #[test]
    fn variants_disagree_on_raw_split() {
        // C4 x C2, both generators inverted, taken verbatim: H = G, D = 1.
        let g = AbelianTwoGroup::new(vec![4, 2]).unwrap();
        let p = GroupProfile::from_blocks(&g, &[0, 1], &[]);
        // statement: (|G^2| - 1*(|H[2]| - 2))/2 - 1 = (2 - 2)/2 - 1 = -1
        assert_eq!(t2(&p, T2Variant::Statement), None);
        // proof: |H^2[2]| = |G^2[2]| = 2 -> (2 - 0)/2 - 1 = 0
        assert_eq!(t2(&p, T2Variant::Proof), Some(0));
    }

    #[test]
    fn t1_invariant_under_canonicalization_move() {
        let g = AbelianTwoGroup::new(vec![4, 2]).unwrap();
        let raw = GroupProfile::from_blocks(&g, &[0, 1], &[]);
        let canonical = GroupProfile::from_blocks(&g, &[0], &[1]);
        assert_eq!(t1(&raw), t1(&canonical));
        assert_eq!(t1(&raw), Some(5));
        assert_eq!(
            t2(&raw, T2Variant::Proof),
            t2(&canonical, T2Variant::Proof)
        );
    }

    #[test]
    fn predictions_invariant_under_generator_permutation() {
        let g1 = AbelianTwoGroup::new(vec![4, 2]).unwrap();
        let g2 = AbelianTwoGroup::new(vec![2, 4]).unwrap();
        let p1 = GroupProfile::from_blocks(&g1, &[0], &[1]);
        let p2 = GroupProfile::from_blocks(&g2, &[1], &[0]);
        for (a, b) in predictions(&p1, false).iter().zip(predictions(&p2, false)) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.log2, b.log2);
        }
    }

    #[test]
    fn identity_involution_predictions() {
        // eta = id: H = 1, so S_eta = V(FG) and W = 1.
        let p = profile(&[4, 2], &[]);
        assert_eq!(t1(&p), Some(v_log(&p)));
        assert_eq!(w_pow_log(&p, 0), Some(0));
        assert_eq!(t_log(&p), 0);
    }

    #[test]
    fn xi_count_examples() {
        let p = profile(&[8], &[0]);
        assert_eq!(xi_count(&p), 3);
        assert_eq!(xi0_count(&p), 1);
        assert_eq!(xi_bar_count(&p), 1);
        let p = profile(&[4, 2], &[0]);
        assert_eq!(xi_count(&p), 2);
        assert_eq!(xi0_count(&p), 2);
        assert_eq!(xi_bar_count(&p), 0);
    }

    #[test]
    fn formula_table_has_unique_ids() {
        let table = formula_table();
        let mut ids: Vec<_> = table.iter().map(|r| r.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), table.len());
    }
}
