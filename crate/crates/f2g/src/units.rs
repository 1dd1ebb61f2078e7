//! Construction of V(FG) and its distinguished subgroups: the Sandling
//! basis, T(FG), T(FG^2), S_eta, V_eta, W(FG), V(FG)[2], plus explicit
//! subgroup algebra (closure, products, intersections, squares, torsion,
//! abelian invariants) and the psi maps.

use std::collections::BTreeSet;

use crate::algebra::{AlgebraElement, GroupAlgebra};
use crate::error::{Error, Result};
use crate::group::{block_subgroup, InvolutionSpec, SubgroupOfG};

/// Explicit unit-group enumeration is limited to |G| <= 16 (|V| <= 32768).
pub const EXPLICIT_CAP: usize = 16;

/// The Sandling index sets of (5) plus the squared-generator set used by
/// T(FG^2).
#[derive(Clone, Debug)]
pub struct SandlingSets {
    /// Vectors with at least one odd coordinate; indexes a basis of V(FG).
    pub l: Vec<Vec<u64>>,
    /// alpha_i in {0, q_i - 1} on the H-block, some nonzero there; indexes T(FG).
    pub l1: Vec<Vec<u64>>,
    /// Zero on the H-block, some alpha_j >= q_j/2 on the D-block.
    pub l2: Vec<Vec<u64>>,
    /// Exponent vectors on the squared generators indexing T(FG^2):
    /// alpha_i in {0, q_i/2 - 1} on the H1-block (some nonzero there),
    /// alpha_i in [0, q_i/2) elsewhere.
    pub l3: Vec<Vec<u64>>,
}

pub fn sandling_index_sets(alg: &GroupAlgebra, spec: &InvolutionSpec) -> SandlingSets {
    let group = alg.group();
    let orders = group.factor_orders();
    let h: BTreeSet<usize> = spec.h_block().iter().copied().collect();
    let h1: BTreeSet<usize> = spec.h1_block().iter().copied().collect();
    let mut l = Vec::new();
    let mut l1 = Vec::new();
    let mut l2 = Vec::new();
    for g in group.elements() {
        let alpha = group.exponents(g);
        if !alpha.iter().any(|&a| a % 2 == 1) {
            continue;
        }
        let in_l1 = alpha
            .iter()
            .enumerate()
            .all(|(i, &a)| !h.contains(&i) || a == 0 || a == orders[i] - 1)
            && alpha
                .iter()
                .enumerate()
                .any(|(i, &a)| h.contains(&i) && a != 0);
        let in_l2 = alpha
            .iter()
            .enumerate()
            .all(|(i, &a)| !h.contains(&i) || a == 0)
            && alpha
                .iter()
                .enumerate()
                .any(|(i, &a)| !h.contains(&i) && a >= orders[i] / 2);
        if in_l1 {
            l1.push(alpha.clone());
        }
        if in_l2 {
            l2.push(alpha.clone());
        }
        l.push(alpha);
    }
    // L3 ranges over exponents of the squared generators, so coordinates run
    // to q_i/2 rather than q_i.
    let mut l3 = Vec::new();
    let mut stack = vec![Vec::with_capacity(orders.len())];
    while let Some(partial) = stack.pop() {
        let i = partial.len();
        if i == orders.len() {
            if partial
                .iter()
                .enumerate()
                .any(|(i, &a)| h1.contains(&i) && a != 0)
            {
                l3.push(partial);
            }
            continue;
        }
        let choices: Vec<u64> = if h1.contains(&i) {
            if orders[i] / 2 >= 2 {
                vec![0, orders[i] / 2 - 1]
            } else {
                vec![0]
            }
        } else {
            (0..orders[i] / 2).collect()
        };
        for c in choices {
            let mut next = partial.clone();
            next.push(c);
            stack.push(next);
        }
    }
    l3.sort();
    SandlingSets { l, l1, l2, l3 }
}

/// The Sandling unit u_alpha = 1 + (a_1 - 1)^{alpha_1} ... (a_t - 1)^{alpha_t}.
pub fn basis_unit(alg: &GroupAlgebra, alpha: &[u64]) -> Result<AlgebraElement> {
    generator_unit(alg, alpha, 1)
}

/// The analogous unit on the squared generators,
/// 1 + (a_1^2 - 1)^{alpha_1} ... (a_t^2 - 1)^{alpha_t}; lives in F[G^2].
pub fn squared_basis_unit(alg: &GroupAlgebra, alpha: &[u64]) -> Result<AlgebraElement> {
    generator_unit(alg, alpha, 2)
}

fn generator_unit(alg: &GroupAlgebra, alpha: &[u64], gen_power: u64) -> Result<AlgebraElement> {
    let group = alg.group();
    if alpha.len() != group.rank() {
        return Err(Error::ArityMismatch {
            expected: group.rank(),
            got: alpha.len(),
        });
    }
    let one = alg.one();
    let mut prod = one.clone();
    for (i, &a) in alpha.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let gen = group.pow(group.generator(i), gen_power);
        let factor = alg.add(&alg.embed(gen), &one)?;
        prod = alg.mul(&prod, &alg.pow(&factor, a)?)?;
    }
    alg.add(&one, &prod)
}

/// The closed-form order of u_beta: min over {i : beta_i != 0} of
/// q_i / 2^{s_i}, where 2^{s_i} is the highest power of two <= beta_i.
pub fn unit_order_formula(alg: &GroupAlgebra, beta: &[u64]) -> Result<u64> {
    let orders = alg.group().factor_orders();
    if beta.len() != orders.len() {
        return Err(Error::ArityMismatch {
            expected: orders.len(),
            got: beta.len(),
        });
    }
    beta.iter()
        .zip(orders)
        .filter(|&(&b, _)| b != 0)
        .map(|(&b, &q)| q >> b.ilog2())
        .min()
        .ok_or_else(|| Error::Invalid("unit order formula needs a nonzero index".into()))
}

/// Multiplicative order of a normalized unit (a power of two).
pub fn unit_order(alg: &GroupAlgebra, x: &AlgebraElement) -> u64 {
    let one = alg.one();
    let mut cur = x.clone();
    let mut ord = 1u64;
    while cur != one {
        cur = alg.square(&cur);
        ord *= 2;
    }
    ord
}

/// psi_1(x) = x^eta x^{-1}, a homomorphism V(FG) -> V_eta(FG).
pub fn psi1(
    alg: &GroupAlgebra,
    spec: &InvolutionSpec,
    x: &AlgebraElement,
) -> Result<AlgebraElement> {
    let inv = alg.inverse(x)?;
    alg.mul(&alg.eta(x, spec), &inv)
}

/// psi_2(x) = x^eta x, a homomorphism V(FG) -> S_eta(FG).
pub fn psi2(
    alg: &GroupAlgebra,
    spec: &InvolutionSpec,
    x: &AlgebraElement,
) -> Result<AlgebraElement> {
    if alg.augmentation(x) != 1 {
        return Err(Error::NotAUnit);
    }
    alg.mul(&alg.eta(x, spec), x)
}

/// An explicit, multiplicatively closed set of normalized units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSubgroup {
    elements: BTreeSet<AlgebraElement>,
    generators: Vec<AlgebraElement>,
}

impl UnitSubgroup {
    pub fn trivial(alg: &GroupAlgebra) -> Self {
        Self {
            elements: BTreeSet::from([alg.one()]),
            generators: Vec::new(),
        }
    }

    /// Closure of a generator list under products (inverses come for free in
    /// a finite group).
    pub fn closure(alg: &GroupAlgebra, generators: &[AlgebraElement]) -> Result<Self> {
        for g in generators {
            if alg.augmentation(g) != 1 {
                return Err(Error::NotAUnit);
            }
        }
        let mut elements = BTreeSet::from([alg.one()]);
        let mut frontier: Vec<AlgebraElement> = vec![alg.one()];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = alg.mul(&x, g)?;
                if elements.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self {
            elements,
            generators: generators.to_vec(),
        })
    }

    /// Wraps an explicit element set without re-verifying closure; used by
    /// constructions that produce subgroups by design.
    pub fn from_set(elements: BTreeSet<AlgebraElement>) -> Self {
        Self {
            elements,
            generators: Vec::new(),
        }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        self.elements.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &AlgebraElement> {
        self.elements.iter()
    }

    pub fn elements(&self) -> &BTreeSet<AlgebraElement> {
        &self.elements
    }

    pub fn generators(&self) -> &[AlgebraElement] {
        &self.generators
    }

    pub fn is_closed(&self, alg: &GroupAlgebra) -> Result<bool> {
        for x in &self.elements {
            for y in &self.elements {
                if !self.elements.contains(&alg.mul(x, y)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn product(&self, alg: &GroupAlgebra, other: &UnitSubgroup) -> Result<UnitSubgroup> {
        let mut elements = BTreeSet::new();
        for x in &self.elements {
            for y in &other.elements {
                elements.insert(alg.mul(x, y)?);
            }
        }
        Ok(UnitSubgroup::from_set(elements))
    }

    pub fn intersection(&self, other: &UnitSubgroup) -> UnitSubgroup {
        UnitSubgroup::from_set(
            self.elements
                .intersection(&other.elements)
                .cloned()
                .collect(),
        )
    }

    /// A^{2^i}: elementwise repeated squaring (a subgroup, G abelian).
    pub fn power(&self, alg: &GroupAlgebra, i: u32) -> UnitSubgroup {
        let mut cur: BTreeSet<AlgebraElement> = self.elements.clone();
        for _ in 0..i {
            cur = cur.iter().map(|x| alg.square(x)).collect();
        }
        UnitSubgroup::from_set(cur)
    }

    /// A[2] = {x in A : x^2 = 1}.
    pub fn two_torsion(&self, alg: &GroupAlgebra) -> UnitSubgroup {
        let one = alg.one();
        UnitSubgroup::from_set(
            self.elements
                .iter()
                .filter(|x| alg.square(x) == one)
                .cloned()
                .collect(),
        )
    }

    /// Multiset of cyclic orders from the Ulm counts
    /// f_j = log2|A^{2^{j-1}}[2]| - log2|A^{2^j}[2]|, sorted descending.
    pub fn invariants(&self, alg: &GroupAlgebra) -> Vec<u64> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        let mut j = 1u32;
        while cur.order() > 1 {
            let next = cur.power(alg, 1);
            let f = cur.two_torsion(alg).order().ilog2() - next.two_torsion(alg).order().ilog2();
            for _ in 0..f {
                out.push(1u64 << j);
            }
            cur = next;
            j += 1;
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

/// All of V(FG) by explicit enumeration of augmentation-1 bit-vectors.
pub fn full_unit_group(alg: &GroupAlgebra) -> Result<UnitSubgroup> {
    let n = alg.dim();
    if n > EXPLICIT_CAP {
        return Err(Error::CapExceeded {
            order: n,
            cap: EXPLICIT_CAP,
        });
    }
    let mut elements = BTreeSet::new();
    for pattern in 0..(1u64 << n) {
        if pattern.count_ones() % 2 == 1 {
            elements.insert(alg.from_bits_u64(pattern));
        }
    }
    Ok(UnitSubgroup::from_set(elements))
}

/// The Sandling generators {u_alpha : alpha in L} with their index vectors;
/// usable at any order without enumerating V(FG).
pub fn sandling_generators(
    alg: &GroupAlgebra,
    sets: &SandlingSets,
) -> Result<Vec<(Vec<u64>, AlgebraElement)>> {
    sets.l
        .iter()
        .map(|alpha| Ok((alpha.clone(), basis_unit(alg, alpha)?)))
        .collect()
}

/// S_eta(FG) built from the normal form: free F2 choices over Xi(G) plus a
/// parity-1 choice over G_eta.
pub fn symmetric_units(alg: &GroupAlgebra, spec: &InvolutionSpec) -> Result<UnitSubgroup> {
    let group = alg.group();
    if group.order() > EXPLICIT_CAP {
        return Err(Error::CapExceeded {
            order: group.order(),
            cap: EXPLICIT_CAP,
        });
    }
    let xi = crate::group::xi_sets(group, spec);
    let fixed = crate::group::fixed_subgroup(group, spec);
    let pair_hats: Vec<AlgebraElement> = xi
        .pairs
        .iter()
        .map(|p| alg.from_support(&[p.rep, p.image]))
        .collect();
    let fixed_elems: Vec<AlgebraElement> =
        fixed.iter().map(|g| alg.embed(g)).collect();
    let mut elements = BTreeSet::new();
    for xi_mask in 0u64..(1 << pair_hats.len()) {
        let mut base = alg.zero();
        for (i, hat) in pair_hats.iter().enumerate() {
            if xi_mask >> i & 1 == 1 {
                base = alg.add(&base, hat)?;
            }
        }
        for beta_mask in 0u64..(1 << fixed_elems.len()) {
            if beta_mask.count_ones() % 2 != 1 {
                continue;
            }
            let mut x = base.clone();
            for (i, fe) in fixed_elems.iter().enumerate() {
                if beta_mask >> i & 1 == 1 {
                    x = alg.add(&x, fe)?;
                }
            }
            elements.insert(x);
        }
    }
    Ok(UnitSubgroup::from_set(elements))
}

/// V_eta(FG) by filtering V(FG) for x^eta x = 1 (explicit mode).
pub fn unitary_units_explicit(alg: &GroupAlgebra, spec: &InvolutionSpec) -> Result<UnitSubgroup> {
    let v = full_unit_group(alg)?;
    let map = alg.eta_map(spec);
    let one = alg.one();
    let mut elements = BTreeSet::new();
    for x in v.iter() {
        if alg.mul(&alg.permute(x, &map), x)? == one {
            elements.insert(x.clone());
        }
    }
    Ok(UnitSubgroup::from_set(elements))
}

/// V_eta(FG) built structurally as H * (T(FG) x V(FD)[2] x W(FG)).
pub fn unitary_units_structural(
    alg: &GroupAlgebra,
    spec: &InvolutionSpec,
) -> Result<UnitSubgroup> {
    let h = h_as_units(alg, spec);
    let sets = sandling_index_sets(alg, spec);
    let t = t_subgroup(alg, &sets)?;
    let vfd2 = subalgebra_two_torsion_units(alg, &block_subgroup(alg.group(), spec.d_block()))?;
    let w = w_subgroup(alg, spec, &sets)?;
    h.product(alg, &t)?
        .product(alg, &vfd2)?
        .product(alg, &w)
}

/// The subgroup H of G embedded as units of FG.
pub fn h_as_units(alg: &GroupAlgebra, spec: &InvolutionSpec) -> UnitSubgroup {
    let h = block_subgroup(alg.group(), spec.h_block());
    UnitSubgroup::from_set(h.iter().map(|g| alg.embed(g)).collect())
}

/// W(FG) = image of psi_1, generated by the psi_1-images of the Sandling
/// basis (psi_1 is a homomorphism on the abelian group V(FG)).
pub fn w_subgroup(
    alg: &GroupAlgebra,
    spec: &InvolutionSpec,
    sets: &SandlingSets,
) -> Result<UnitSubgroup> {
    let mut gens = Vec::with_capacity(sets.l.len());
    for alpha in &sets.l {
        gens.push(psi1(alg, spec, &basis_unit(alg, alpha)?)?);
    }
    UnitSubgroup::closure(alg, &gens)
}

/// V(FG)[2] = 1 + I(G[2]) via the ideal basis.
pub fn two_torsion_units(alg: &GroupAlgebra) -> Result<UnitSubgroup> {
    subalgebra_two_torsion_units(alg, &SubgroupOfG::full(alg.group()))
}

/// V(FK)[2] for a subgroup K <= G, embedded in FG: 1 + I_FK(K[2]).
pub fn subalgebra_two_torsion_units(
    alg: &GroupAlgebra,
    carrier: &SubgroupOfG,
) -> Result<UnitSubgroup> {
    let k2 = carrier.torsion(alg.group(), 1);
    let basis = alg.ideal_basis(carrier, &k2)?;
    Ok(UnitSubgroup::from_set(
        alg.affine_span(&basis).into_iter().collect(),
    ))
}

/// T(FG) = product of <u_alpha> over alpha in L1; elementary abelian.
pub fn t_subgroup(alg: &GroupAlgebra, sets: &SandlingSets) -> Result<UnitSubgroup> {
    let gens: Result<Vec<AlgebraElement>> =
        sets.l1.iter().map(|a| basis_unit(alg, a)).collect();
    UnitSubgroup::closure(alg, &gens?)
}

/// T(FG^2) = product of <u_alpha> over alpha in L3, with u_alpha built on the
/// squared generators; the T-subgroup of the subalgebra F[G^2].
pub fn t2_subgroup(alg: &GroupAlgebra, sets: &SandlingSets) -> Result<UnitSubgroup> {
    let gens: Result<Vec<AlgebraElement>> =
        sets.l3.iter().map(|a| squared_basis_unit(alg, a)).collect();
    UnitSubgroup::closure(alg, &gens?)
}
