//! Verification harness: brute-force oracles independent of the structural
//! constructions, a catalog of (group, involution) cases, and
//! prediction-vs-oracle / set-vs-set comparisons producing machine-readable
//! reports.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::{check_inverse_identities, f2_rank, AlgebraElement, GroupAlgebra};
use crate::error::Result;
use crate::formulas::{self, FormulaRow, GroupProfile, Prediction, T2Variant};
use crate::group::{
    block_subgroup, canonicalize_involution, format_descriptor, xi_sets, AbelianTwoGroup,
    GroupElement, InvolutionSpec, SubgroupOfG,
};
use crate::units::{
    self, basis_unit, full_unit_group, psi1, sandling_index_sets, symmetric_units,
    two_torsion_units, unit_order, unit_order_formula, unitary_units_structural, UnitSubgroup,
    EXPLICIT_CAP,
};

/// Explicit-mode catalog ceiling and the structural-only tier above it.
pub const EXPLICIT_MAX_ORDER: usize = EXPLICIT_CAP;
pub const STRUCTURAL_ORDER: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Explicit,
    Structural,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleValue {
    pub name: String,
    pub value: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetCheck {
    pub name: String,
    pub lhs_order: u64,
    pub rhs_order: u64,
    pub equal: bool,
    /// Both sides trivial: recorded but never decides pass/fail.
    pub degenerate: bool,
    /// False for informational checks (documented discrepancies).
    pub counted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueCheck {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<&'static str>,
    pub predicted: Option<u64>,
    pub oracle: u64,
    pub matches: bool,
    pub counted: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct T2Verdicts {
    pub oracle_log2: i64,
    pub statement_log2: Option<i64>,
    pub proof_log2: Option<i64>,
    pub statement_matches: bool,
    pub proof_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub group: String,
    pub involution: String,
    pub suite: &'static str,
    pub mode: Mode,
    pub canonical: bool,
    pub profile: GroupProfile,
    pub predictions: Vec<Prediction>,
    pub oracle: Vec<OracleValue>,
    pub value_checks: Vec<ValueCheck>,
    pub set_checks: Vec<SetCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t2_verdicts: Option<T2Verdicts>,
    pub status: &'static str,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks_run: usize,
    pub checks_failed: usize,
    pub degenerate_checks: usize,
    pub statement_variant_disagreements: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub max_order: usize,
    pub structural_order: Option<usize>,
    pub variant: T2Variant,
    pub notes: Vec<&'static str>,
    pub formula_table: Vec<FormulaRow>,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
    pub elapsed_ms: u128,
}

/// Standing resolutions baked into the harness, restated in every report.
pub fn report_notes() -> Vec<&'static str> {
    vec![
        "T(FG^2) basis units are built on the squared generators with the \
         L3 exponents taken directly; the alternative reading (L3 exponents \
         on the original generators) produces units of order 4 and is \
         rejected empirically.",
        "The |S_eta^2| exponent has two published readings; the default is \
         the proof variant (|H^2[2]|), which is invariant under moving \
         order-2 generators between blocks and matches the oracle on every \
         case. The statement variant (|H[2]|) is reported alongside it.",
        "The 2-torsion decomposition of the unitary units is verified as \
         V(FD)[2] x W(FG)[2] x T(FG), whose ranks sum to t3. The published \
         wording names V(FG)[2] as the first factor; that set already \
         contains the other two factors, so it is recorded as an \
         informational check instead.",
    ]
}

// ---------------------------------------------------------------------------
// Oracles: definition-level scans, independent of the structural code.
// ---------------------------------------------------------------------------

/// All eta-fixed normalized units, by scanning every augmentation-1 pattern.
pub fn oracle_filter_symmetric(
    alg: &GroupAlgebra,
    spec: &InvolutionSpec,
) -> Result<UnitSubgroup> {
    let v = full_unit_group(alg)?;
    let map = alg.eta_map(spec);
    Ok(UnitSubgroup::from_set(
        v.iter()
            .filter(|x| alg.permute(x, &map) == **x)
            .cloned()
            .collect(),
    ))
}

/// All units with x^eta * x = 1, by the same scan.
pub fn oracle_filter_unitary(alg: &GroupAlgebra, spec: &InvolutionSpec) -> Result<UnitSubgroup> {
    let v = full_unit_group(alg)?;
    let map = alg.eta_map(spec);
    let one = alg.one();
    let mut set = BTreeSet::new();
    for x in v.iter() {
        if alg.mul(&alg.permute(x, &map), x)? == one {
            set.insert(x.clone());
        }
    }
    Ok(UnitSubgroup::from_set(set))
}

/// Exact image and kernel of psi_1 over all of V(FG).
pub fn oracle_psi1_image_kernel(
    alg: &GroupAlgebra,
    spec: &InvolutionSpec,
) -> Result<(UnitSubgroup, UnitSubgroup)> {
    let v = full_unit_group(alg)?;
    let one = alg.one();
    let mut image = BTreeSet::new();
    let mut kernel = BTreeSet::new();
    for x in v.iter() {
        let y = psi1(alg, spec, x)?;
        if y == one {
            kernel.insert(x.clone());
        }
        image.insert(y);
    }
    Ok((
        UnitSubgroup::from_set(image),
        UnitSubgroup::from_set(kernel),
    ))
}

/// {x^2 : x in A}.
pub fn oracle_squares(alg: &GroupAlgebra, a: &UnitSubgroup) -> UnitSubgroup {
    a.power(alg, 1)
}

/// All normalized units supported on a subgroup K (the embedded V(FK)).
pub fn units_supported_on(alg: &GroupAlgebra, carrier: &SubgroupOfG) -> Vec<AlgebraElement> {
    let elems: Vec<GroupElement> = carrier.iter().collect();
    assert!(elems.len() <= EXPLICIT_CAP);
    let mut out = Vec::with_capacity(1usize << (elems.len() - 1));
    for pattern in 0..(1u64 << elems.len()) {
        if pattern.count_ones() % 2 != 1 {
            continue;
        }
        let support: Vec<GroupElement> = elems
            .iter()
            .enumerate()
            .filter(|&(i, _)| pattern >> i & 1 == 1)
            .map(|(_, &g)| g)
            .collect();
        out.push(alg.from_support(&support));
    }
    out
}

// ---------------------------------------------------------------------------
// Catalog enumeration.
// ---------------------------------------------------------------------------

/// Factor-order lists (non-increasing partitions into powers of two >= 2)
/// for every abelian 2-group of order 2..=max_order.
pub fn catalog_groups(max_order: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut order = 2usize;
    while order <= max_order {
        partitions_into(order as u64, order as u64, &mut Vec::new(), &mut out);
        order *= 2;
    }
    out
}

fn partitions_into(remaining: u64, max_part: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if remaining == 1 {
        out.push(acc.clone());
        return;
    }
    let mut part = max_part.min(remaining);
    while part >= 2 {
        if remaining % part == 0 {
            acc.push(part);
            partitions_into(remaining / part, part, acc, out);
            acc.pop();
        }
        part /= 2;
    }
}

fn block_key(group: &AbelianTwoGroup, block: &[usize]) -> Vec<u64> {
    let mut orders: Vec<u64> = block.iter().map(|&i| group.factor_orders()[i]).collect();
    orders.sort_unstable();
    orders
}

/// Distinct involutory involutions of FG up to profile: one representative
/// raw_inverted set per (canonical H-orders multiset, D-orders multiset).
pub fn involution_cases(group: &AbelianTwoGroup) -> Vec<BTreeSet<usize>> {
    let t = group.rank();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << t) {
        let raw: BTreeSet<usize> = (0..t).filter(|i| mask >> i & 1 == 1).collect();
        let spec = canonicalize_involution(group, &raw).expect("valid positions");
        let key = (
            block_key(group, spec.h_block()),
            block_key(group, spec.d_block()),
        );
        if seen.insert(key) {
            out.push(spec.h_block().iter().copied().collect());
        }
    }
    out
}

/// Raw inverted sets that the canonicalization rule actually rewrites
/// (some order-2 generator is inverted), deduplicated by raw-block profile.
pub fn noncanonical_cases(group: &AbelianTwoGroup) -> Vec<BTreeSet<usize>> {
    let t = group.rank();
    let orders = group.factor_orders();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << t) {
        let raw: BTreeSet<usize> = (0..t).filter(|i| mask >> i & 1 == 1).collect();
        if !raw.iter().any(|&i| orders[i] == 2) {
            continue;
        }
        let h: Vec<usize> = raw.iter().copied().collect();
        let d: Vec<usize> = (0..t).filter(|i| !raw.contains(i)).collect();
        let key = (block_key(group, &h), block_key(group, &d));
        if seen.insert(key) {
            out.push(raw);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Per-case runner.
// ---------------------------------------------------------------------------

struct Checks {
    values: Vec<ValueCheck>,
    sets: Vec<SetCheck>,
    oracle: Vec<OracleValue>,
}

impl Checks {
    fn new() -> Self {
        Self {
            values: Vec::new(),
            sets: Vec::new(),
            oracle: Vec::new(),
        }
    }

    fn value(
        &mut self,
        name: &str,
        variant: Option<&'static str>,
        predicted_log2: Option<i64>,
        oracle: u64,
        counted: bool,
    ) {
        let predicted = match predicted_log2 {
            Some(l) if (0..64).contains(&l) => Some(1u64 << l),
            _ => None,
        };
        self.oracle.push(OracleValue {
            name: name.to_string(),
            value: oracle,
        });
        self.values.push(ValueCheck {
            name: name.to_string(),
            variant,
            predicted,
            oracle,
            matches: predicted == Some(oracle),
            counted,
        });
    }

    /// A plain count comparison (predictions that are not powers of two).
    fn count(&mut self, name: &str, predicted: u64, oracle: u64) {
        self.oracle.push(OracleValue {
            name: name.to_string(),
            value: oracle,
        });
        self.values.push(ValueCheck {
            name: name.to_string(),
            variant: None,
            predicted: Some(predicted),
            oracle,
            matches: predicted == oracle,
            counted: true,
        });
    }

    fn set(&mut self, name: &str, lhs: &UnitSubgroup, rhs: &UnitSubgroup, counted: bool) {
        self.sets.push(SetCheck {
            name: name.to_string(),
            lhs_order: lhs.order(),
            rhs_order: rhs.order(),
            equal: lhs.elements() == rhs.elements(),
            degenerate: lhs.order() <= 1 && rhs.order() <= 1,
            counted,
        });
    }

    /// An aggregate pass/fail over `total` sub-checks, `ok` of which held.
    fn aggregate(&mut self, name: &str, ok: u64, total: u64) {
        self.sets.push(SetCheck {
            name: name.to_string(),
            lhs_order: ok,
            rhs_order: total,
            equal: ok == total,
            degenerate: total == 0,
            counted: true,
        });
    }
}

fn status_of(checks: &Checks, variant: T2Variant) -> &'static str {
    let values_ok = checks.values.iter().all(|c| {
        !c.counted
            || c.matches
            || match c.variant {
                // Only the selected t2 variant decides the outcome.
                Some(v) => v != variant.as_str(),
                None => false,
            }
    });
    let sets_ok = checks
        .sets
        .iter()
        .all(|c| !c.counted || c.degenerate || c.equal);
    if values_ok && sets_ok {
        "pass"
    } else {
        "fail"
    }
}

fn case_name(group: &AbelianTwoGroup, raw: &BTreeSet<usize>) -> String {
    format_descriptor(group, raw)
}

fn involution_label(spec: &InvolutionSpec) -> String {
    if spec.is_identity() {
        "identity".to_string()
    } else {
        format!(
            "inverts generators {:?} (1-based)",
            spec.h_block().iter().map(|i| i + 1).collect::<Vec<_>>()
        )
    }
}

/// Symmetric sample elements for the psi_1 factorization identity: a few
/// deterministic eta-fixed algebra elements, nilpotent-square ones first.
fn symmetric_samples(alg: &GroupAlgebra, spec: &InvolutionSpec) -> Vec<AlgebraElement> {
    let group = alg.group();
    let mut out = vec![alg.one()];
    let mut pair_sum = alg.zero();
    for g in group.elements() {
        let img = crate::group::apply_eta(group, spec, g);
        if img != g && g.0 < img.0 {
            let hat = alg.from_support(&[g, img]);
            if out.len() < 4 {
                out.push(hat.clone());
            }
            pair_sum = alg.add(&pair_sum, &hat).unwrap();
        }
    }
    if !alg.is_zero(&pair_sum) {
        out.push(alg.add(&alg.one(), &pair_sum).unwrap());
    }
    let h_sub = block_subgroup(group, spec.h_block());
    if h_sub.order() > 1 {
        out.push(alg.hat(&h_sub));
    }
    out
}

/// Identities (12)-(13) for every h in the H-block of order > 2, and the
/// psi_1 factorization (14) with sampled symmetric s for orders > 4.
fn run_identity_checks(
    alg: &GroupAlgebra,
    spec: &InvolutionSpec,
    checks: &mut Checks,
) -> Result<()> {
    let group = alg.group();
    let h_sub = block_subgroup(group, spec.h_block());
    let one = alg.one();
    let (mut ok_12, mut total_12) = (0u64, 0u64);
    let (mut ok_14, mut total_14) = (0u64, 0u64);
    let samples = symmetric_samples(alg, spec);
    for h in h_sub.iter() {
        let q = group.element_order(h);
        if q <= 2 {
            continue;
        }
        total_12 += 1;
        if check_inverse_identities(alg, h)?.all_hold {
            ok_12 += 1;
        }
        if q <= 4 {
            continue;
        }
        let hp1 = alg.add(&alg.embed(h), &one)?;
        for s in &samples {
            total_14 += 1;
            let u = alg.add(&one, &alg.mul(&alg.pow(&hp1, q - 3)?, s)?)?;
            let order2 = alg.square(&u) == one;
            let lhs = psi1(alg, spec, &u)?;
            let f1 = alg.add(&one, &alg.mul(&alg.pow(&hp1, q - 2)?, s)?)?;
            let f2 = alg.add(&one, &alg.mul(&alg.pow(&hp1, q - 1)?, s)?)?;
            if order2 && lhs == alg.mul(&f1, &f2)? {
                ok_14 += 1;
            }
        }
    }
    checks.aggregate("identities_12_13", ok_12, total_12);
    checks.aggregate("identity_14_psi1_factorization", ok_14, total_14);
    Ok(())
}

/// Lemma 4(i) order agreement over all alpha in L, plus the direct-product
/// order bookkeeping.
fn run_sandling_checks(
    alg: &GroupAlgebra,
    sets: &units::SandlingSets,
    checks: &mut Checks,
) -> Result<()> {
    let mut ok = 0u64;
    let mut log_sum = 0i64;
    for alpha in &sets.l {
        let u = basis_unit(alg, alpha)?;
        let predicted = unit_order_formula(alg, alpha)?;
        if unit_order(alg, &u) == predicted {
            ok += 1;
        }
        log_sum += predicted.ilog2() as i64;
    }
    checks.aggregate("lemma4_i_unit_orders", ok, sets.l.len() as u64);
    checks.count(
        "sandling_order_log_sum",
        (alg.dim() - 1) as u64,
        log_sum as u64,
    );
    Ok(())
}

fn subgroup_of_group_elements(alg: &GroupAlgebra, sub: &SubgroupOfG) -> UnitSubgroup {
    UnitSubgroup::from_set(sub.iter().map(|g| alg.embed(g)).collect())
}

/// Full explicit-mode case: every oracle, every set identity.
fn run_explicit_case(group: &AbelianTwoGroup, raw: &BTreeSet<usize>) -> Result<CaseReport> {
    let start = Instant::now();
    let spec = canonicalize_involution(group, raw)?;
    let alg = GroupAlgebra::new(group.clone());
    let profile = GroupProfile::new(group, &spec);
    let canonical = spec.is_canonical(group);
    let sets = sandling_index_sets(&alg, &spec);
    let mut checks = Checks::new();

    // Oracles (definition-level scans).
    let v = full_unit_group(&alg)?;
    let s_oracle = oracle_filter_symmetric(&alg, &spec)?;
    let v_eta_oracle = oracle_filter_unitary(&alg, &spec)?;
    let (w_oracle, psi1_kernel) = oracle_psi1_image_kernel(&alg, &spec)?;
    let s_squares = oracle_squares(&alg, &s_oracle);
    let s_tor2 = s_oracle.two_torsion(&alg);
    let v_eta_tor2 = v_eta_oracle.two_torsion(&alg);
    let v_tor2_oracle = v.two_torsion(&alg);
    let xi = xi_sets(group, &spec);

    // Structural constructions under test.
    let s_normal = symmetric_units(&alg, &spec)?;
    let v_eta_structural = unitary_units_structural(&alg, &spec)?;
    let w_gen = units::w_subgroup(&alg, &spec, &sets)?;
    let t = units::t_subgroup(&alg, &sets)?;
    let t2sub = units::t2_subgroup(&alg, &sets)?;
    let v2 = two_torsion_units(&alg)?;
    let d_sub = block_subgroup(group, spec.d_block());
    let vfd2 = units::subalgebra_two_torsion_units(&alg, &d_sub)?;
    let h_units = units::h_as_units(&alg, &spec);
    let h_in_v_eta = h_units
        .iter()
        .filter(|x| v_eta_oracle.contains(x))
        .count() as u64;

    // Order predictions vs oracle counts.
    checks.value("v_order", None, Some(formulas::v_log(&profile)), v.order(), true);
    checks.value("s_order", None, formulas::t1(&profile), s_oracle.order(), true);
    checks.value(
        "s_squares_order",
        Some(T2Variant::Statement.as_str()),
        formulas::t2(&profile, T2Variant::Statement),
        s_squares.order(),
        true,
    );
    checks.value(
        "s_squares_order",
        Some(T2Variant::Proof.as_str()),
        formulas::t2(&profile, T2Variant::Proof),
        s_squares.order(),
        true,
    );
    checks.value("s_tor2_order", None, formulas::t3(&profile), s_tor2.order(), true);
    checks.value(
        "v_eta_order",
        None,
        formulas::v_eta_log(&profile),
        v_eta_oracle.order(),
        true,
    );
    checks.value(
        "v_eta_tor2_order",
        None,
        formulas::v_eta_tor2_log(&profile),
        v_eta_tor2.order(),
        true,
    );
    checks.value(
        "v_tor2_order",
        None,
        Some(formulas::v_tor2_log(&profile)),
        v_tor2_oracle.order(),
        true,
    );
    checks.value(
        "vd_tor2_order",
        None,
        Some(formulas::vd_tor2_log(&profile)),
        vfd2.order(),
        true,
    );
    checks.value("t_order", None, Some(formulas::t_log(&profile)), t.order(), true);
    for i in 0..profile.g_pow.len() {
        checks.value(
            &format!("w_pow_order_{i}"),
            None,
            formulas::w_pow_log(&profile, i),
            w_oracle.power(&alg, i as u32).order(),
            true,
        );
    }
    checks.value(
        "w_tor2_order",
        None,
        formulas::w_tor2_log(&profile),
        w_oracle.two_torsion(&alg).order(),
        true,
    );
    if canonical {
        checks.value(
            "v_star_order",
            None,
            formulas::v_star_log(&profile),
            v_eta_oracle.order(),
            true,
        );
    }

    // Lemma 2(i): exact rank of the ideal basis of I(G[2]).
    let g2_basis = alg.ideal_basis_full(&SubgroupOfG::full(group).torsion(group, 1))?;
    checks.count(
        "ideal_rank_g2",
        (group.order() - profile.g_pow[1] as usize) as u64,
        f2_rank(&g2_basis) as u64,
    );
    // Lemma 2(iii): the P = H[2] x D two-torsion count.
    let h_sub = block_subgroup(group, spec.h_block());
    let p_sub = h_sub.torsion(group, 1).product(group, &d_sub);
    let p_tor2 = units::subalgebra_two_torsion_units(&alg, &p_sub)?;
    checks.value(
        "p_two_torsion_order",
        None,
        Some(formulas::lemma_p_two_torsion_log(&profile)),
        p_tor2.order(),
        true,
    );

    // Xi counts vs closed forms.
    checks.count("xi_count", formulas::xi_count(&profile), xi.xi_count as u64);
    checks.count("xi0_count", formulas::xi0_count(&profile), xi.xi0_count as u64);
    checks.count(
        "xi_bar_count",
        formulas::xi_bar_count(&profile),
        xi.orbit_count as u64,
    );

    // Set identities.
    checks.set("s_normal_form", &s_normal, &s_oracle, true);
    checks.set("psi1_kernel_is_s", &psi1_kernel, &s_oracle, true);
    checks.set("psi1_image_is_w", &w_gen, &w_oracle, true);
    checks.set("lemma8_v_eta_product", &v_eta_structural, &v_eta_oracle, true);
    checks.aggregate("h_contained_in_v_eta", h_in_v_eta, h_units.order());
    checks.set("lemma2_ii_v_tor2", &v2, &v_tor2_oracle, true);
    checks.set(
        "s_cap_v_eta_is_v_eta_tor2",
        &s_oracle.intersection(&v_eta_oracle),
        &v_eta_tor2,
        true,
    );
    checks.set("s_tor2_eq_v_eta_tor2", &s_tor2, &v_eta_tor2, true);

    // Lemma 3(i): G cap W = H^2.
    let g_units = subgroup_of_group_elements(&alg, &SubgroupOfG::full(group));
    let h_sq_units = subgroup_of_group_elements(&alg, &h_sub.power(group, 1));
    checks.set(
        "lemma3_i_g_cap_w",
        &g_units.intersection(&w_oracle),
        &h_sq_units,
        true,
    );

    // Lemma 3(ii): W(FG^2) = W(FG)^2, with W(FG^2) scanned from the
    // units supported on G^2.
    let g_sq = SubgroupOfG::full(group).power(group, 1);
    let map = alg.eta_map(&spec);
    let mut w_fg2 = BTreeSet::new();
    for x in units_supported_on(&alg, &g_sq) {
        w_fg2.insert(alg.mul(&alg.permute(&x, &map), &alg.inverse(&x)?)?);
    }
    checks.set(
        "lemma3_ii_w_fg2",
        &UnitSubgroup::from_set(w_fg2),
        &w_oracle.power(&alg, 1),
        true,
    );

    // Lemma 4: orders of the basis units and the closure of the basis.
    run_sandling_checks(&alg, &sets, &mut checks)?;
    let gens: Result<Vec<AlgebraElement>> = sets.l.iter().map(|a| basis_unit(&alg, a)).collect();
    let closure = UnitSubgroup::closure(&alg, &gens?)?;
    checks.set("lemma4_ii_closure", &closure, &v, true);

    // T(FG) and T(FG^2) are elementary abelian; T(FG^2) lives in F[G^2].
    let one = alg.one();
    let t_ea = t.iter().filter(|x| alg.square(x) == one).count() as u64;
    checks.aggregate("t_elementary_abelian", t_ea, t.order());
    let t2_ea = t2sub.iter().filter(|x| alg.square(x) == one).count() as u64;
    checks.aggregate("t2_elementary_abelian", t2_ea, t2sub.order());
    let t2_supported = t2sub
        .iter()
        .filter(|x| alg.support(x).iter().all(|&i| g_sq.contains(GroupElement(i))))
        .count() as u64;
    checks.aggregate("t2_supported_on_g2", t2_supported, t2sub.order());

    // Lemma 5: (V(FD)[2] x T) cap W = 1, and that product is direct.
    let vfd2_t = vfd2.product(&alg, &t)?;
    checks.set(
        "lemma5_intersection",
        &vfd2_t.intersection(&w_oracle),
        &UnitSubgroup::trivial(&alg),
        true,
    );
    checks.count("lemma5_directness", vfd2.order() * t.order(), vfd2_t.order());

    // Two-torsion decomposition of V_eta (see report_notes): the working
    // reading V(FD)[2] x W[2] x T, plus the published reading recorded
    // informationally.
    let w_tor2 = w_oracle.two_torsion(&alg);
    let decomp = vfd2.product(&alg, &w_tor2)?.product(&alg, &t)?;
    checks.set("lemma6_i_decomposition", &decomp, &v_eta_tor2, true);
    checks.count(
        "lemma6_i_directness",
        vfd2.order() * w_tor2.order() * t.order(),
        decomp.order(),
    );
    let published = v2.product(&alg, &w_tor2)?.product(&alg, &t)?;
    checks.set("lemma6_i_published_reading", &published, &v_eta_tor2, false);

    // Lemma 6(ii)/(iii) and Lemma 7 intersections against V_eta^2.
    let v_eta_sq = v_eta_oracle.power(&alg, 1);
    checks.set(
        "lemma6_ii_intersection",
        &v_eta_sq.intersection(&vfd2),
        &UnitSubgroup::trivial(&alg),
        true,
    );
    let d1_sq_gens: Vec<GroupElement> = spec
        .d1_block()
        .iter()
        .map(|&i| group.pow(group.generator(i), 2))
        .collect();
    let d1_sq = SubgroupOfG::from_generators(group, &d1_sq_gens);
    let d1sq_d = d1_sq.product(group, &d_sub);
    let v_d1sq_d_tor2 = units::subalgebra_two_torsion_units(&alg, &d1sq_d)?;
    checks.set(
        "lemma6_iii_intersection",
        &v_eta_sq.intersection(&v_d1sq_d_tor2),
        &subgroup_of_group_elements(&alg, &d1_sq),
        true,
    );
    checks.set(
        "lemma7_intersection",
        &v_eta_sq.intersection(&t2sub),
        &UnitSubgroup::trivial(&alg),
        true,
    );

    run_identity_checks(&alg, &spec, &mut checks)?;

    let t2_verdicts = t2_verdicts(&profile, s_squares.order());
    let status = status_of(&checks, T2Variant::Proof);
    Ok(CaseReport {
        case: case_name(group, raw),
        group: group
            .factor_orders()
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join("x"),
        involution: involution_label(&spec),
        suite: "canonical",
        mode: Mode::Explicit,
        canonical,
        profile,
        predictions: formulas::predictions(&GroupProfile::new(group, &spec), canonical),
        oracle: checks.oracle.clone(),
        value_checks: checks.values.clone(),
        set_checks: checks.sets.clone(),
        t2_verdicts: Some(t2_verdicts),
        status,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn t2_verdicts(profile: &GroupProfile, s_squares_order: u64) -> T2Verdicts {
    let oracle_log2 = s_squares_order.ilog2() as i64;
    let statement_log2 = formulas::t2(profile, T2Variant::Statement);
    let proof_log2 = formulas::t2(profile, T2Variant::Proof);
    T2Verdicts {
        oracle_log2,
        statement_log2,
        proof_log2,
        statement_matches: statement_log2 == Some(oracle_log2),
        proof_matches: proof_log2 == Some(oracle_log2),
    }
}

/// Non-canonicalized side-suite: the raw generator split is fed to the
/// formulas verbatim, while the oracle (which depends only on the
/// automorphism, not on the bookkeeping split) stays the same.
fn run_noncanonical_case(group: &AbelianTwoGroup, raw: &BTreeSet<usize>) -> Result<CaseReport> {
    let start = Instant::now();
    let spec = canonicalize_involution(group, raw)?;
    let alg = GroupAlgebra::new(group.clone());
    let h_raw: Vec<usize> = raw.iter().copied().collect();
    let d_raw: Vec<usize> = (0..group.rank()).filter(|i| !raw.contains(i)).collect();
    let raw_profile = GroupProfile::from_blocks(group, &h_raw, &d_raw);

    let s_oracle = oracle_filter_symmetric(&alg, &spec)?;
    let s_squares = oracle_squares(&alg, &s_oracle);
    let s_tor2 = s_oracle.two_torsion(&alg);

    let mut checks = Checks::new();
    checks.value("s_order", None, formulas::t1(&raw_profile), s_oracle.order(), true);
    checks.value(
        "s_squares_order",
        Some(T2Variant::Statement.as_str()),
        formulas::t2(&raw_profile, T2Variant::Statement),
        s_squares.order(),
        true,
    );
    checks.value(
        "s_squares_order",
        Some(T2Variant::Proof.as_str()),
        formulas::t2(&raw_profile, T2Variant::Proof),
        s_squares.order(),
        true,
    );
    // The displayed t3 expression shares the |H[2]| reading and is likewise
    // only informational on raw splits; t1 - t2(proof) is the counted check.
    checks.value(
        "s_tor2_order",
        Some("t3_displayed"),
        formulas::t3(&raw_profile),
        s_tor2.order(),
        false,
    );
    let t3_from_parts = match (
        formulas::t1(&raw_profile),
        formulas::t2(&raw_profile, T2Variant::Proof),
    ) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    };
    checks.value(
        "s_tor2_order",
        Some("t1_minus_t2_proof"),
        t3_from_parts,
        s_tor2.order(),
        true,
    );

    let t2_verdicts = t2_verdicts(&raw_profile, s_squares.order());
    let status = status_of(&checks, T2Variant::Proof);
    Ok(CaseReport {
        case: format!("{}:raw", case_name(group, raw)),
        group: group
            .factor_orders()
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join("x"),
        involution: format!(
            "raw split: inverts generators {:?} (1-based), no canonicalization",
            raw.iter().map(|i| i + 1).collect::<Vec<_>>()
        ),
        suite: "noncanonical",
        mode: Mode::Explicit,
        canonical: false,
        profile: raw_profile.clone(),
        predictions: formulas::predictions(&raw_profile, false),
        oracle: checks.oracle.clone(),
        value_checks: checks.values.clone(),
        set_checks: checks.sets.clone(),
        t2_verdicts: Some(t2_verdicts),
        status,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Structural-mode case for groups beyond the explicit cap: everything that
/// does not require enumerating V(FG).
fn run_structural_case(group: &AbelianTwoGroup, raw: &BTreeSet<usize>) -> Result<CaseReport> {
    let start = Instant::now();
    let spec = canonicalize_involution(group, raw)?;
    let alg = GroupAlgebra::new(group.clone());
    let profile = GroupProfile::new(group, &spec);
    let canonical = spec.is_canonical(group);
    let sets = sandling_index_sets(&alg, &spec);
    let mut checks = Checks::new();

    run_sandling_checks(&alg, &sets, &mut checks)?;
    run_identity_checks(&alg, &spec, &mut checks)?;

    // W from psi1-images of the basis; its power orders against Lemma 3(ii).
    let w = units::w_subgroup(&alg, &spec, &sets)?;
    for i in 0..profile.g_pow.len() {
        checks.value(
            &format!("w_pow_order_{i}"),
            None,
            formulas::w_pow_log(&profile, i),
            w.power(&alg, i as u32).order(),
            true,
        );
    }
    checks.value(
        "w_tor2_order",
        None,
        formulas::w_tor2_log(&profile),
        w.two_torsion(&alg).order(),
        true,
    );
    let h_sub = block_subgroup(group, spec.h_block());
    let g_units = subgroup_of_group_elements(&alg, &SubgroupOfG::full(group));
    let h_sq_units = subgroup_of_group_elements(&alg, &h_sub.power(group, 1));
    checks.set(
        "lemma3_i_g_cap_w",
        &g_units.intersection(&w),
        &h_sq_units,
        true,
    );

    let t = units::t_subgroup(&alg, &sets)?;
    checks.value("t_order", None, Some(formulas::t_log(&profile)), t.order(), true);
    let one = alg.one();
    let t_ea = t.iter().filter(|x| alg.square(x) == one).count() as u64;
    checks.aggregate("t_elementary_abelian", t_ea, t.order());

    let xi = xi_sets(group, &spec);
    checks.count("xi_count", formulas::xi_count(&profile), xi.xi_count as u64);
    checks.count("xi0_count", formulas::xi0_count(&profile), xi.xi0_count as u64);
    checks.count(
        "xi_bar_count",
        formulas::xi_bar_count(&profile),
        xi.orbit_count as u64,
    );

    // Formula self-consistency (no oracle needed).
    let t1 = formulas::t1(&profile);
    let t2p = formulas::t2(&profile, T2Variant::Proof);
    let t3 = formulas::t3(&profile);
    let consistent = match (t1, t2p, t3) {
        (Some(a), Some(b), Some(c)) => (a - b == c) as u64,
        _ => 0,
    };
    checks.aggregate("consistency_t3_eq_t1_minus_t2", consistent, 1);
    let v_eta_tor2_eq_t3 = (formulas::v_eta_tor2_log(&profile) == t3) as u64;
    checks.aggregate("consistency_v_eta_tor2_eq_t3", v_eta_tor2_eq_t3, 1);

    let status = status_of(&checks, T2Variant::Proof);
    Ok(CaseReport {
        case: case_name(group, raw),
        group: group
            .factor_orders()
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join("x"),
        involution: involution_label(&spec),
        suite: "canonical",
        mode: Mode::Structural,
        canonical,
        profile: profile.clone(),
        predictions: formulas::predictions(&profile, canonical),
        oracle: checks.oracle.clone(),
        value_checks: checks.values.clone(),
        set_checks: checks.sets.clone(),
        t2_verdicts: None,
        status,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

// ---------------------------------------------------------------------------
// Catalog runner.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Largest group order to cover in explicit mode (capped at 16).
    pub max_order: usize,
    /// Optional structural tier above the explicit cap (default order 32).
    pub structural_order: Option<usize>,
    pub include_noncanonical: bool,
    /// Variant whose s_squares_order verdict decides case status.
    pub variant: T2Variant,
    /// Restrict to a single descriptor case instead of the catalog.
    pub single: Option<(AbelianTwoGroup, BTreeSet<usize>)>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            max_order: EXPLICIT_MAX_ORDER,
            structural_order: Some(STRUCTURAL_ORDER),
            include_noncanonical: true,
            variant: T2Variant::Proof,
            single: None,
        }
    }
}

pub fn run_catalog(opts: &RunOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut cases = Vec::new();
    if let Some((group, raw)) = &opts.single {
        if group.order() <= EXPLICIT_MAX_ORDER {
            cases.push(run_explicit_case(group, raw)?);
            let is_noncanonical = raw
                .iter()
                .any(|&i| group.factor_orders()[i] == 2);
            if is_noncanonical {
                cases.push(run_noncanonical_case(group, raw)?);
            }
        } else {
            cases.push(run_structural_case(group, raw)?);
        }
    } else {
        for orders in catalog_groups(opts.max_order.min(EXPLICIT_MAX_ORDER)) {
            let group = AbelianTwoGroup::new(orders)?;
            for raw in involution_cases(&group) {
                cases.push(run_explicit_case(&group, &raw)?);
            }
            if opts.include_noncanonical {
                for raw in noncanonical_cases(&group) {
                    cases.push(run_noncanonical_case(&group, &raw)?);
                }
            }
        }
        if let Some(structural_order) = opts.structural_order {
            for orders in catalog_groups(structural_order) {
                if orders.iter().product::<u64>() as usize <= opts.max_order.min(EXPLICIT_MAX_ORDER)
                {
                    continue;
                }
                let group = AbelianTwoGroup::new(orders)?;
                for raw in involution_cases(&group) {
                    cases.push(run_structural_case(&group, &raw)?);
                }
            }
        }
    }
    cases.sort_by(|a, b| (a.suite, &a.case).cmp(&(b.suite, &b.case)));

    // Re-evaluate status under the selected variant.
    for case in &mut cases {
        let checks = Checks {
            values: case.value_checks.clone(),
            sets: case.set_checks.clone(),
            oracle: Vec::new(),
        };
        case.status = status_of(&checks, opts.variant);
    }

    let mut summary = Summary {
        cases: cases.len(),
        passed: 0,
        failed: 0,
        checks_run: 0,
        checks_failed: 0,
        degenerate_checks: 0,
        statement_variant_disagreements: Vec::new(),
    };
    for case in &cases {
        if case.status == "pass" {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
        for c in &case.value_checks {
            if c.counted {
                summary.checks_run += 1;
                let selected = match c.variant {
                    Some(v) => v == opts.variant.as_str() || !v.starts_with("t2_"),
                    None => true,
                };
                if selected && !c.matches {
                    summary.checks_failed += 1;
                }
            }
        }
        for c in &case.set_checks {
            if c.counted {
                summary.checks_run += 1;
                if c.degenerate {
                    summary.degenerate_checks += 1;
                } else if !c.equal {
                    summary.checks_failed += 1;
                }
            }
        }
        if let Some(v) = &case.t2_verdicts {
            if !v.statement_matches && v.proof_matches {
                summary.statement_variant_disagreements.push(case.case.clone());
            }
        }
    }

    Ok(VerificationReport {
        max_order: opts.max_order,
        structural_order: opts.structural_order,
        variant: opts.variant,
        notes: report_notes(),
        formula_table: formulas::formula_table(),
        cases,
        summary,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// One CSV line per case; header first.
pub fn report_csv(report: &VerificationReport) -> String {
    let mut out = String::from("case,suite,mode,canonical,status,checks,failed_checks\n");
    for c in &report.cases {
        let total = c.value_checks.iter().filter(|v| v.counted).count()
            + c.set_checks.iter().filter(|s| s.counted).count();
        let failed = c
            .value_checks
            .iter()
            .filter(|v| v.counted && !v.matches && v.variant != Some(T2Variant::Statement.as_str()))
            .count()
            + c.set_checks
                .iter()
                .filter(|s| s.counted && !s.degenerate && !s.equal)
                .count();
        out.push_str(&format!(
            "{},{},{:?},{},{},{},{}\n",
            c.case, c.suite, c.mode, c.canonical, c.status, total, failed
        ));
    }
    out
}
