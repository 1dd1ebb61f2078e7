//! Finite abelian 2-groups, their involutions and subgroup machinery.
//!
//! A group is an ordered list of cyclic factor orders `q1 x ... x qt`, each a
//! power of two >= 2. Elements are mixed-radix indices with factor 1 least
//! significant, so index <-> exponent conversion is O(t).

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Explicit group-level operations are capped at this order.
pub const GROUP_ORDER_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianTwoGroup {
    factor_orders: Vec<u64>,
    order: usize,
    exponent_log: u32,
}

/// An element of an `AbelianTwoGroup`, stored as its mixed-radix index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(pub usize);

impl AbelianTwoGroup {
    pub fn new(factor_orders: Vec<u64>) -> Result<Self> {
        let mut order: usize = 1;
        for &q in &factor_orders {
            if q < 2 || !q.is_power_of_two() {
                return Err(Error::InvalidGroup(format!(
                    "factor order {q} is not a power of two >= 2"
                )));
            }
            order = order
                .checked_mul(q as usize)
                .filter(|&o| o <= GROUP_ORDER_CAP)
                .ok_or_else(|| Error::CapExceeded {
                    order: usize::MAX,
                    cap: GROUP_ORDER_CAP,
                })?;
        }
        let exponent_log = factor_orders
            .iter()
            .map(|q| q.trailing_zeros())
            .max()
            .unwrap_or(0);
        Ok(Self {
            factor_orders,
            order,
            exponent_log,
        })
    }

    /// The group of order 1 (empty factor list).
    pub fn trivial() -> Self {
        Self {
            factor_orders: Vec::new(),
            order: 1,
            exponent_log: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.factor_orders.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factor_orders(&self) -> &[u64] {
        &self.factor_orders
    }

    /// n with 2^n = exp(G).
    pub fn exponent_log(&self) -> u32 {
        self.exponent_log
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order).map(GroupElement)
    }

    /// The generator a_i (0-based position).
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut stride = 1usize;
        for &q in &self.factor_orders[..i] {
            stride *= q as usize;
        }
        GroupElement(stride)
    }

    pub fn exponents(&self, x: GroupElement) -> Vec<u64> {
        let mut idx = x.0;
        self.factor_orders
            .iter()
            .map(|&q| {
                let e = (idx % q as usize) as u64;
                idx /= q as usize;
                e
            })
            .collect()
    }

    pub fn from_exponents(&self, exps: &[u64]) -> Result<GroupElement> {
        if exps.len() != self.rank() {
            return Err(Error::ArityMismatch {
                expected: self.rank(),
                got: exps.len(),
            });
        }
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (&e, &q) in exps.iter().zip(&self.factor_orders) {
            idx += (e % q) as usize * stride;
            stride *= q as usize;
        }
        Ok(GroupElement(idx))
    }

    pub fn mul(&self, x: GroupElement, y: GroupElement) -> GroupElement {
        let (mut xi, mut yi) = (x.0, y.0);
        let mut idx = 0usize;
        let mut stride = 1usize;
        for &q in &self.factor_orders {
            let q = q as usize;
            idx += ((xi % q + yi % q) % q) * stride;
            stride *= q;
            xi /= q;
            yi /= q;
        }
        GroupElement(idx)
    }

    pub fn inv(&self, x: GroupElement) -> GroupElement {
        let mut xi = x.0;
        let mut idx = 0usize;
        let mut stride = 1usize;
        for &q in &self.factor_orders {
            let q = q as usize;
            let e = xi % q;
            idx += ((q - e) % q) * stride;
            stride *= q;
            xi /= q;
        }
        GroupElement(idx)
    }

    pub fn pow(&self, x: GroupElement, k: u64) -> GroupElement {
        let mut xi = x.0;
        let mut idx = 0usize;
        let mut stride = 1usize;
        for &q in &self.factor_orders {
            let qu = q as usize;
            let e = (xi % qu) as u64;
            idx += ((e * (k % q)) % q) as usize * stride;
            stride *= qu;
            xi /= qu;
        }
        GroupElement(idx)
    }

    /// Least k >= 1 with x^k = 1; always a power of two.
    pub fn element_order(&self, x: GroupElement) -> u64 {
        let mut xi = x.0;
        let mut ord = 1u64;
        for &q in &self.factor_orders {
            let qu = q as usize;
            let e = (xi % qu) as u64;
            let comp = q / gcd(e, q);
            ord = ord.max(comp);
            xi /= qu;
        }
        ord
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}

/// Which generators the involution inverts, after canonicalization.
///
/// Order-2 generators are never kept in the inverted (H) block: inversion is
/// the identity on them, and the order formulas require the convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionSpec {
    raw_inverted: BTreeSet<usize>,
    h_block: Vec<usize>,
    d_block: Vec<usize>,
    h1_block: Vec<usize>,
    d1_block: Vec<usize>,
    invert: Vec<bool>,
}

impl InvolutionSpec {
    pub fn raw_inverted(&self) -> &BTreeSet<usize> {
        &self.raw_inverted
    }

    /// Positions (0-based) of the inverted generators, all of order >= 4.
    pub fn h_block(&self) -> &[usize] {
        &self.h_block
    }

    pub fn d_block(&self) -> &[usize] {
        &self.d_block
    }

    /// H-generators of order > 4.
    pub fn h1_block(&self) -> &[usize] {
        &self.h1_block
    }

    /// H-generators of order exactly 4 (the D1 factor of H = H1 x D1).
    pub fn d1_block(&self) -> &[usize] {
        &self.d1_block
    }

    pub fn is_identity(&self) -> bool {
        self.h_block.is_empty()
    }

    /// True when eta(g) = g^{-1} for all g: every generator of order > 2 is inverted.
    pub fn is_canonical(&self, group: &AbelianTwoGroup) -> bool {
        group
            .factor_orders()
            .iter()
            .enumerate()
            .all(|(i, &q)| q <= 2 || self.h_block.contains(&i))
    }
}

pub fn canonicalize_involution(
    group: &AbelianTwoGroup,
    raw_inverted: &BTreeSet<usize>,
) -> Result<InvolutionSpec> {
    let t = group.rank();
    if let Some(&p) = raw_inverted.iter().find(|&&p| p >= t) {
        return Err(Error::Invalid(format!(
            "inverted position {} out of range 1..={}",
            p + 1,
            t
        )));
    }
    let mut h_block = Vec::new();
    let mut d_block = Vec::new();
    for i in 0..t {
        if raw_inverted.contains(&i) && group.factor_orders()[i] > 2 {
            h_block.push(i);
        } else {
            d_block.push(i);
        }
    }
    let d1_block: Vec<usize> = h_block
        .iter()
        .copied()
        .filter(|&i| group.factor_orders()[i] == 4)
        .collect();
    let h1_block: Vec<usize> = h_block
        .iter()
        .copied()
        .filter(|&i| group.factor_orders()[i] > 4)
        .collect();
    let mut invert = vec![false; t];
    for &i in &h_block {
        invert[i] = true;
    }
    Ok(InvolutionSpec {
        raw_inverted: raw_inverted.clone(),
        h_block,
        d_block,
        h1_block,
        d1_block,
        invert,
    })
}

/// The canonical involution eta(g) = g^{-1} (all positions marked inverted).
pub fn canonical_involution(group: &AbelianTwoGroup) -> InvolutionSpec {
    let raw: BTreeSet<usize> = (0..group.rank()).collect();
    canonicalize_involution(group, &raw).expect("all positions are in range")
}

pub fn apply_eta(group: &AbelianTwoGroup, spec: &InvolutionSpec, x: GroupElement) -> GroupElement {
    let mut xi = x.0;
    let mut idx = 0usize;
    let mut stride = 1usize;
    for (&q, &inv) in group.factor_orders().iter().zip(&spec.invert) {
        let q = q as usize;
        let e = xi % q;
        let e = if inv { (q - e) % q } else { e };
        idx += e * stride;
        stride *= q;
        xi /= q;
    }
    GroupElement(idx)
}

/// A subgroup of G stored as a sorted, explicit set of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupOfG {
    elements: Vec<GroupElement>,
    generators: Option<Vec<GroupElement>>,
}

impl SubgroupOfG {
    pub fn trivial() -> Self {
        Self {
            elements: vec![GroupElement(0)],
            generators: Some(Vec::new()),
        }
    }

    pub fn full(group: &AbelianTwoGroup) -> Self {
        Self {
            elements: group.elements().collect(),
            generators: None,
        }
    }

    pub fn from_generators(group: &AbelianTwoGroup, gens: &[GroupElement]) -> Self {
        let mut seen = vec![false; group.order()];
        seen[0] = true;
        let mut elements = vec![GroupElement(0)];
        let mut frontier = vec![GroupElement(0)];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = group.mul(x, g);
                if !seen[y.0] {
                    seen[y.0] = true;
                    elements.push(y);
                    frontier.push(y);
                }
            }
        }
        elements.sort();
        Self {
            elements,
            generators: Some(gens.to_vec()),
        }
    }

    /// Wrap an explicit element set, verifying closure under the group law.
    pub fn from_elements(group: &AbelianTwoGroup, elements: &[GroupElement]) -> Result<Self> {
        let mut sorted: Vec<GroupElement> = elements.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.binary_search(&GroupElement(0)).is_err() {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &x in &sorted {
            for &y in &sorted {
                if sorted.binary_search(&group.mul(x, y)).is_err() {
                    return Err(Error::NotASubgroup(format!(
                        "not closed: {} * {}",
                        x.0, y.0
                    )));
                }
            }
        }
        Ok(Self {
            elements: sorted,
            generators: None,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: GroupElement) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.elements.iter().copied()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> Option<&[GroupElement]> {
        self.generators.as_deref()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupOfG) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// {g in self : g^{2^n} = 1}.
    pub fn torsion(&self, group: &AbelianTwoGroup, n: u32) -> SubgroupOfG {
        let bound = 1u64 << n.min(63);
        let elements: Vec<GroupElement> = self
            .elements
            .iter()
            .copied()
            .filter(|&x| group.element_order(x) <= bound)
            .collect();
        Self {
            elements,
            generators: None,
        }
    }

    /// {g^{2^i} : g in self}.
    pub fn power(&self, group: &AbelianTwoGroup, i: u32) -> SubgroupOfG {
        let k = 1u64 << i.min(63);
        let mut elements: Vec<GroupElement> = self
            .elements
            .iter()
            .map(|&x| group.pow(x, k))
            .collect();
        elements.sort();
        elements.dedup();
        Self {
            elements,
            generators: None,
        }
    }

    /// Setwise product of two subgroups of the same group.
    pub fn product(&self, group: &AbelianTwoGroup, other: &SubgroupOfG) -> SubgroupOfG {
        let mut elements = Vec::with_capacity(self.order());
        for &x in &self.elements {
            for &y in &other.elements {
                elements.push(group.mul(x, y));
            }
        }
        elements.sort();
        elements.dedup();
        Self {
            elements,
            generators: None,
        }
    }

    pub fn intersection(&self, other: &SubgroupOfG) -> SubgroupOfG {
        let elements: Vec<GroupElement> = self
            .elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Self {
            elements,
            generators: None,
        }
    }
}

/// G_eta = {g : eta(g) = g}; setwise equal to H[2] x D.
pub fn fixed_subgroup(
    group: &AbelianTwoGroup,
    spec: &InvolutionSpec,
) -> SubgroupOfG {
    let elements: Vec<GroupElement> = group
        .elements()
        .filter(|&x| apply_eta(group, spec, x) == x)
        .collect();
    SubgroupOfG {
        elements,
        generators: None,
    }
}

/// The subgroup generated by the generators at the given positions.
pub fn block_subgroup(group: &AbelianTwoGroup, positions: &[usize]) -> SubgroupOfG {
    let gens: Vec<GroupElement> = positions.iter().map(|&i| group.generator(i)).collect();
    SubgroupOfG::from_generators(group, &gens)
}

/// One representative per coset of `sub` in `carrier`, minimal index per
/// coset, identity first.
pub fn left_transversal_in(
    group: &AbelianTwoGroup,
    carrier: &SubgroupOfG,
    sub: &SubgroupOfG,
) -> Result<Vec<GroupElement>> {
    if !sub.is_subgroup_of(carrier) {
        return Err(Error::NotASubgroup(
            "transversal: sub is not contained in carrier".into(),
        ));
    }
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::with_capacity(carrier.order() / sub.order());
    for x in carrier.iter() {
        if !covered[x.0] {
            reps.push(x);
            for h in sub.iter() {
                covered[group.mul(x, h).0] = true;
            }
        }
    }
    Ok(reps)
}

pub fn left_transversal(
    group: &AbelianTwoGroup,
    sub: &SubgroupOfG,
) -> Result<Vec<GroupElement>> {
    left_transversal_in(group, &SubgroupOfG::full(group), sub)
}

/// Cyclic decomposition of G/H together with the index surjection G -> G/H.
pub fn quotient_group(
    group: &AbelianTwoGroup,
    sub: &SubgroupOfG,
) -> Result<(AbelianTwoGroup, Vec<usize>)> {
    let reps = left_transversal(group, sub)?;
    let m = reps.len();
    // position of the coset representative for every element of G
    let mut rep_pos = vec![usize::MAX; group.order()];
    for (i, &r) in reps.iter().enumerate() {
        for h in sub.iter() {
            rep_pos[group.mul(r, h).0] = i;
        }
    }
    let qmul = |a: usize, b: usize| rep_pos[group.mul(reps[a], reps[b]).0];
    let basis = abelian_two_basis(m, &qmul);
    let factor_orders: Vec<u64> = basis.iter().map(|&(_, o)| o).collect();
    let quotient = AbelianTwoGroup::new(factor_orders)?;
    // enumerate the quotient's exponent vectors, mapping coset positions to indices
    let mut pos_to_index = vec![usize::MAX; m];
    for idx in 0..quotient.order() {
        let exps = quotient.exponents(GroupElement(idx));
        let mut acc = 0usize; // identity coset position
        for (&(b, _), &e) in basis.iter().zip(&exps) {
            // acc *= b^e via square-and-multiply over coset positions
            let mut p = b;
            let mut k = e;
            while k > 0 {
                if k & 1 == 1 {
                    acc = qmul(acc, p);
                }
                k >>= 1;
                if k > 0 {
                    p = qmul(p, p);
                }
            }
        }
        pos_to_index[acc] = idx;
    }
    let projection: Vec<usize> = (0..group.order()).map(|g| pos_to_index[rep_pos[g]]).collect();
    Ok((quotient, projection))
}

/// Greedy basis extraction for a finite abelian 2-group given as a black-box
/// multiplication on 0..m with identity 0. Returns (generator, order) pairs
/// with non-increasing orders whose cyclic factors decompose the group.
fn abelian_two_basis(m: usize, mul: &dyn Fn(usize, usize) -> usize) -> Vec<(usize, u64)> {
    let pow = |x: usize, mut k: u64| {
        let mut acc = 0usize;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            k >>= 1;
        }
        acc
    };
    let ord = |x: usize| {
        let mut k = 1u64;
        let mut y = x;
        while y != 0 {
            y = mul(y, y);
            k *= 2;
        }
        k
    };
    let mut basis: Vec<(usize, u64)> = Vec::new();
    let mut span: BTreeSet<usize> = BTreeSet::from([0]);
    while span.len() < m {
        // order of x modulo the current span
        let ord_mod = |x: usize| {
            let mut k = 1u64;
            let mut y = x;
            while !span.contains(&y) {
                y = mul(y, y);
                k *= 2;
            }
            k
        };
        let (x, ordm) = (0..m)
            .map(|x| (x, ord_mod(x)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("nonempty");
        let xm = pow(x, ordm);
        // x^ordm lies in span^ordm; subtract a matching root to split off <x>
        let y = span
            .iter()
            .copied()
            .find(|&y| pow(y, ordm) == xm)
            .expect("greedy choice guarantees a root in the span");
        let y_inv = pow(y, ord(y) - 1);
        let x_adj = mul(x, y_inv);
        debug_assert_eq!(ord(x_adj), ordm);
        // extend span by <x_adj>
        let mut new_span = BTreeSet::new();
        let mut p = 0usize;
        loop {
            for &s in &span {
                new_span.insert(mul(s, p));
            }
            p = mul(p, x_adj);
            if p == 0 {
                break;
            }
        }
        debug_assert_eq!(new_span.len(), span.len() * ordm as usize);
        span = new_span;
        basis.push((x_adj, ordm));
    }
    basis
}

/// One unordered pair {g, eta(g)} of non-fixed elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XiPair {
    pub rep: GroupElement,
    pub image: GroupElement,
    pub class: XiClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiClass {
    /// rep^2 = eta(rep)^2
    Xi0,
    Xi1,
}

#[derive(Clone, Debug)]
pub struct XiSets {
    pub pairs: Vec<XiPair>,
    pub xi_count: usize,
    pub xi0_count: usize,
    pub xi1_count: usize,
    /// Number of G[2]-orbits on Xi_1.
    pub orbit_count: usize,
}

/// Enumerates Xi(G) with E(G) the lexicographically smaller member of each
/// pair, classifies Xi_0 vs Xi_1 and counts the G[2]-orbits on Xi_1.
pub fn xi_sets(group: &AbelianTwoGroup, spec: &InvolutionSpec) -> XiSets {
    let mut pairs = Vec::new();
    for g in group.elements() {
        let img = apply_eta(group, spec, g);
        if img == g || img < g {
            continue; // fixed, or counted from the smaller member
        }
        let class = if group.pow(g, 2) == group.pow(img, 2) {
            XiClass::Xi0
        } else {
            XiClass::Xi1
        };
        pairs.push(XiPair {
            rep: g,
            image: img,
            class,
        });
    }
    let xi_count = pairs.len();
    let xi0_count = pairs.iter().filter(|p| p.class == XiClass::Xi0).count();
    let xi1_count = xi_count - xi0_count;

    // orbits of X = G[2] acting by (g, eta(g)) . a = (ga, eta(g)a)
    let x_sub = SubgroupOfG::full(group).torsion(group, 1);
    let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
    let mut orbit_count = 0usize;
    for p in pairs.iter().filter(|p| p.class == XiClass::Xi1) {
        if seen.contains(&p.rep) {
            continue;
        }
        orbit_count += 1;
        for a in x_sub.iter() {
            let u = group.mul(p.rep, a);
            let v = group.mul(p.image, a);
            seen.insert(u.min(v));
        }
    }
    XiSets {
        pairs,
        xi_count,
        xi0_count,
        xi1_count,
        orbit_count,
    }
}

/// Parses the descriptor grammar `"q1xq2x...xqt:inv=i,j,..."`.
///
/// `inv` lists 1-based inverted generator positions; omitting the `:inv=`
/// clause means the canonical involution (all generators inverted), while an
/// empty `inv=` means the identity involution.
pub fn parse_descriptor(s: &str) -> Result<(AbelianTwoGroup, BTreeSet<usize>)> {
    let (group_part, inv_part) = match s.split_once(':') {
        Some((g, rest)) => {
            let inv = rest
                .strip_prefix("inv=")
                .ok_or_else(|| Error::Parse(format!("expected `inv=` after `:` in {s:?}")))?;
            (g, Some(inv))
        }
        None => (s, None),
    };
    let mut factor_orders = Vec::new();
    for piece in group_part.split('x') {
        let q: u64 = piece
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad factor order {piece:?}")))?;
        factor_orders.push(q);
    }
    let group = AbelianTwoGroup::new(factor_orders)?;
    let raw: BTreeSet<usize> = match inv_part {
        None => (0..group.rank()).collect(),
        Some("") => BTreeSet::new(),
        Some(list) => {
            let mut set = BTreeSet::new();
            for piece in list.split(',') {
                let pos: usize = piece
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad inv position {piece:?}")))?;
                if pos == 0 || pos > group.rank() {
                    return Err(Error::Parse(format!(
                        "inv position {pos} out of range 1..={}",
                        group.rank()
                    )));
                }
                set.insert(pos - 1);
            }
            set
        }
    };
    Ok((group, raw))
}

/// Prints a descriptor that `parse_descriptor` parses back identically.
pub fn format_descriptor(group: &AbelianTwoGroup, raw_inverted: &BTreeSet<usize>) -> String {
    let factors: Vec<String> = group.factor_orders().iter().map(|q| q.to_string()).collect();
    let inv: Vec<String> = raw_inverted.iter().map(|p| (p + 1).to_string()).collect();
    format!("{}:inv={}", factors.join("x"), inv.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(orders: &[u64]) -> AbelianTwoGroup {
        AbelianTwoGroup::new(orders.to_vec()).unwrap()
    }

    fn spec_of(group: &AbelianTwoGroup, inverted: &[usize]) -> InvolutionSpec {
        canonicalize_involution(group, &inverted.iter().copied().collect()).unwrap()
    }

    #[test]
    fn mul_examples() {
        let c4 = grp(&[4]);
        assert_eq!(c4.mul(GroupElement(1), GroupElement(3)), c4.identity());
        let c4c2 = grp(&[4, 2]);
        let x = c4c2.from_exponents(&[1, 1]).unwrap();
        let y = c4c2.from_exponents(&[3, 1]).unwrap();
        assert_eq!(c4c2.mul(x, y), c4c2.identity());
        let c8 = grp(&[8]);
        assert_eq!(c8.mul(GroupElement(3), GroupElement(7)), GroupElement(2));
    }

    #[test]
    fn element_order_examples() {
        let c8 = grp(&[8]);
        assert_eq!(c8.element_order(c8.identity()), 1);
        assert_eq!(c8.element_order(GroupElement(2)), 4);
        let c4c2 = grp(&[4, 2]);
        let x = c4c2.from_exponents(&[2, 1]).unwrap();
        assert_eq!(c4c2.element_order(x), 2);
    }

    #[test]
    fn index_exponent_bijection() {
        let g = grp(&[4, 2, 8]);
        for x in g.elements() {
            assert_eq!(g.from_exponents(&g.exponents(x)).unwrap(), x);
        }
    }

    #[test]
    fn canonicalization_examples() {
        let c2 = grp(&[2]);
        let s = spec_of(&c2, &[0]);
        assert!(s.h_block().is_empty());
        assert_eq!(s.d_block(), &[0]);

        let c2c4 = grp(&[2, 4]);
        let s = spec_of(&c2c4, &[0, 1]);
        assert_eq!(s.h_block(), &[1]);
        assert_eq!(s.d_block(), &[0]);

        let c4 = grp(&[4]);
        let s = spec_of(&c4, &[0]);
        assert_eq!(s.h_block(), &[0]);
        assert_eq!(s.d1_block(), &[0]);
        assert!(s.h1_block().is_empty());
    }

    #[test]
    fn apply_eta_examples() {
        let c4 = grp(&[4]);
        let s = spec_of(&c4, &[0]);
        assert_eq!(apply_eta(&c4, &s, GroupElement(1)), GroupElement(3));

        let c4c2 = grp(&[4, 2]);
        let s = spec_of(&c4c2, &[0]);
        let x = c4c2.from_exponents(&[1, 1]).unwrap();
        let y = c4c2.from_exponents(&[3, 1]).unwrap();
        assert_eq!(apply_eta(&c4c2, &s, x), y);

        let id = spec_of(&c4c2, &[]);
        for x in c4c2.elements() {
            assert_eq!(apply_eta(&c4c2, &id, x), x);
        }
    }

    #[test]
    fn eta_is_an_involutive_automorphism() {
        for orders in [vec![4u64, 2], vec![8], vec![4, 4], vec![2, 2, 4]] {
            let g = grp(&orders);
            for mask in 0..(1usize << g.rank()) {
                let inverted: Vec<usize> =
                    (0..g.rank()).filter(|i| mask >> i & 1 == 1).collect();
                let s = spec_of(&g, &inverted);
                for x in g.elements() {
                    assert_eq!(apply_eta(&g, &s, apply_eta(&g, &s, x)), x);
                    for y in g.elements() {
                        assert_eq!(
                            apply_eta(&g, &s, g.mul(x, y)),
                            g.mul(apply_eta(&g, &s, x), apply_eta(&g, &s, y))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_subgroup_examples() {
        let c4 = grp(&[4]);
        let s = spec_of(&c4, &[0]);
        let f = fixed_subgroup(&c4, &s);
        assert_eq!(f.elements(), &[GroupElement(0), GroupElement(2)]);

        let c4c2 = grp(&[4, 2]);
        let id = spec_of(&c4c2, &[]);
        assert_eq!(fixed_subgroup(&c4c2, &id).order(), 8);

        let s = spec_of(&c4c2, &[0]);
        let f = fixed_subgroup(&c4c2, &s);
        let expected: Vec<GroupElement> = [[0u64, 0], [2, 0], [0, 1], [2, 1]]
            .iter()
            .map(|e| c4c2.from_exponents(e).unwrap())
            .collect();
        let mut expected = expected;
        expected.sort();
        assert_eq!(f.elements(), expected.as_slice());
    }

    #[test]
    fn fixed_subgroup_is_h2_times_d() {
        for orders in [vec![4u64, 2], vec![8, 2], vec![4, 4], vec![2, 2]] {
            let g = grp(&orders);
            for mask in 0..(1usize << g.rank()) {
                let inverted: Vec<usize> =
                    (0..g.rank()).filter(|i| mask >> i & 1 == 1).collect();
                let s = spec_of(&g, &inverted);
                let h = block_subgroup(&g, s.h_block());
                let d = block_subgroup(&g, s.d_block());
                let h2d = h.torsion(&g, 1).product(&g, &d);
                assert_eq!(fixed_subgroup(&g, &s), h2d);
            }
        }
    }

    #[test]
    fn torsion_and_power_examples() {
        let c4c2 = grp(&[4, 2]);
        assert_eq!(SubgroupOfG::full(&c4c2).torsion(&c4c2, 1).order(), 4);
        assert_eq!(SubgroupOfG::full(&c4c2).power(&c4c2, 1).order(), 2);
        let c8 = grp(&[8]);
        assert_eq!(SubgroupOfG::full(&c8).power(&c8, 1).order(), 4);
        let c2k = grp(&[2, 2, 2]);
        assert_eq!(SubgroupOfG::full(&c2k).torsion(&c2k, 1).order(), 8);
        let h = grp(&[4, 8]);
        assert_eq!(SubgroupOfG::full(&h).torsion(&h, 1).order(), 4);
    }

    #[test]
    fn power_torsion_orders_multiply_to_group_order() {
        for orders in [vec![4u64, 2], vec![8, 4], vec![2, 2, 2, 2], vec![16, 2]] {
            let g = grp(&orders);
            let full = SubgroupOfG::full(&g);
            for i in 0..=g.exponent_log() {
                let p = full.power(&g, i);
                let t = full.torsion(&g, i);
                assert_eq!(p.order() * t.order(), g.order());
            }
        }
    }

    #[test]
    fn transversal_examples() {
        let c4 = grp(&[4]);
        let full = SubgroupOfG::full(&c4);
        assert_eq!(left_transversal(&c4, &full).unwrap(), vec![GroupElement(0)]);
        assert_eq!(
            left_transversal(&c4, &SubgroupOfG::trivial()).unwrap().len(),
            4
        );
        let h = SubgroupOfG::from_elements(&c4, &[GroupElement(0), GroupElement(2)]).unwrap();
        assert_eq!(
            left_transversal(&c4, &h).unwrap(),
            vec![GroupElement(0), GroupElement(1)]
        );
    }

    #[test]
    fn transversal_covers_disjointly() {
        let g = grp(&[4, 4]);
        let h = block_subgroup(&g, &[0]).power(&g, 1); // <a1^2>
        let reps = left_transversal(&g, &h).unwrap();
        let mut covered = BTreeSet::new();
        for &r in &reps {
            for x in h.iter() {
                assert!(covered.insert(g.mul(r, x)));
            }
        }
        assert_eq!(covered.len(), g.order());
    }

    #[test]
    fn quotient_examples() {
        let c4 = grp(&[4]);
        let (q, proj) = quotient_group(&c4, &SubgroupOfG::trivial()).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(proj.len(), 4);

        let h = SubgroupOfG::from_elements(&c4, &[GroupElement(0), GroupElement(2)]).unwrap();
        let (q, proj) = quotient_group(&c4, &h).unwrap();
        assert_eq!(q.factor_orders(), &[2]);
        assert_eq!(proj[0], 0);
        assert_ne!(proj[1], 0);

        let c4c2 = grp(&[4, 2]);
        let d = block_subgroup(&c4c2, &[1]);
        let (q, proj) = quotient_group(&c4c2, &d).unwrap();
        assert_eq!(q.factor_orders(), &[4]);
        // projection is a homomorphism
        for x in c4c2.elements() {
            for y in c4c2.elements() {
                let lhs = proj[c4c2.mul(x, y).0];
                let rhs = q.mul(GroupElement(proj[x.0]), GroupElement(proj[y.0])).0;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn quotient_of_mixed_group() {
        let g = grp(&[8, 4, 2]);
        let h = block_subgroup(&g, &[0]).power(&g, 2); // <a1^4>, order 2
        let (q, proj) = quotient_group(&g, &h).unwrap();
        assert_eq!(q.order(), 32);
        let mut sorted = q.factor_orders().to_vec();
        sorted.sort();
        assert_eq!(sorted, vec![2, 4, 4]);
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(
                    proj[g.mul(x, y).0],
                    q.mul(GroupElement(proj[x.0]), GroupElement(proj[y.0])).0
                );
            }
        }
    }

    #[test]
    fn xi_examples() {
        let c4c2 = grp(&[4, 2]);
        let s = spec_of(&c4c2, &[0]);
        let xi = xi_sets(&c4c2, &s);
        assert_eq!(xi.xi_count, 2);
        assert_eq!(xi.xi0_count, 2);
        assert_eq!(xi.orbit_count, 0);

        let c8 = grp(&[8]);
        let s = spec_of(&c8, &[0]);
        let xi = xi_sets(&c8, &s);
        assert_eq!(xi.xi_count, 3);
        assert_eq!(xi.xi0_count, 1);
        assert_eq!(xi.xi1_count, 2);
        assert_eq!(xi.orbit_count, 1);

        let id = spec_of(&c8, &[]);
        let xi = xi_sets(&c8, &id);
        assert_eq!(xi.xi_count, 0);
        assert_eq!(xi.xi0_count, 0);
        assert_eq!(xi.orbit_count, 0);
    }

    #[test]
    fn xi_counts_match_closed_forms() {
        for orders in [vec![4u64, 2], vec![8], vec![8, 2], vec![4, 4], vec![16]] {
            let g = grp(&orders);
            for mask in 0..(1usize << g.rank()) {
                let inverted: Vec<usize> =
                    (0..g.rank()).filter(|i| mask >> i & 1 == 1).collect();
                let s = spec_of(&g, &inverted);
                let xi = xi_sets(&g, &s);
                let h = block_subgroup(&g, s.h_block());
                let d = block_subgroup(&g, s.d_block());
                let g_eta = fixed_subgroup(&g, &s);
                assert_eq!(xi.xi_count, (g.order() - g_eta.order()) / 2);
                let h4 = h.torsion(&g, 2).order();
                let h2 = h.torsion(&g, 1).order();
                assert_eq!(xi.xi0_count, (h4 - h2) * d.order() / 2);
                let g2 = SubgroupOfG::full(&g).power(&g, 1).order();
                let h_sq_2 = h.power(&g, 1).torsion(&g, 1).order();
                let d2 = d.power(&g, 1).order();
                assert_eq!(xi.orbit_count, (g2 - h_sq_2 * d2) / 2);
            }
        }
    }

    #[test]
    fn descriptor_roundtrip() {
        let (g, raw) = parse_descriptor("4x2:inv=1").unwrap();
        assert_eq!(g.factor_orders(), &[4, 2]);
        assert_eq!(raw, BTreeSet::from([0]));
        let printed = format_descriptor(&g, &raw);
        let (g2, raw2) = parse_descriptor(&printed).unwrap();
        assert_eq!(g, g2);
        assert_eq!(raw, raw2);

        let (_, raw) = parse_descriptor("4x2:inv=").unwrap();
        assert!(raw.is_empty());
        let (g, raw) = parse_descriptor("4x2").unwrap();
        assert_eq!(raw.len(), g.rank());

        assert!(parse_descriptor("3").is_err());
        assert!(parse_descriptor("4:inv=5").is_err());
        assert!(parse_descriptor("4:foo=1").is_err());
    }
}
