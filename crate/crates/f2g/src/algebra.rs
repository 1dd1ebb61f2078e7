//! Exact arithmetic in the group algebra F2G.
//!
//! Elements are bit-vectors of length |G| (bit g = coefficient of g). Every
//! element carries an identifier of its ambient group; binary operations
//! check it, since a silent cross-group xor is the most likely bug.

use crate::error::{Error, Result};
use crate::group::{
    left_transversal_in, AbelianTwoGroup, GroupElement, InvolutionSpec, SubgroupOfG,
};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AlgebraElement {
    group_id: u64,
    bits: Vec<u64>,
}

impl AlgebraElement {
    pub fn group_id(&self) -> u64 {
        self.group_id
    }
}

/// Multiplication context for F2G: the group plus precomputed index maps.
pub struct GroupAlgebra {
    group: AbelianTwoGroup,
    id: u64,
    words: usize,
    square_map: Vec<u32>,
    // full multiplication table for small groups, row-major g * |G| + h
    mul_table: Option<Vec<u32>>,
}

const MUL_TABLE_MAX_ORDER: usize = 2048;

fn fnv1a(data: &[u64]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &x in data {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

impl GroupAlgebra {
    pub fn new(group: AbelianTwoGroup) -> Self {
        let n = group.order();
        let words = n.div_ceil(64);
        let id = fnv1a(group.factor_orders());
        let square_map: Vec<u32> = (0..n)
            .map(|g| group.pow(GroupElement(g), 2).0 as u32)
            .collect();
        let mul_table = if n <= MUL_TABLE_MAX_ORDER {
            let mut table = vec![0u32; n * n];
            for g in 0..n {
                for h in 0..n {
                    table[g * n + h] = group.mul(GroupElement(g), GroupElement(h)).0 as u32;
                }
            }
            Some(table)
        } else {
            None
        };
        Self {
            group,
            id,
            words,
            square_map,
            mul_table,
        }
    }

    pub fn group(&self) -> &AbelianTwoGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.group_id != self.id {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            group_id: self.id,
            bits: vec![0; self.words],
        }
    }

    pub fn one(&self) -> AlgebraElement {
        self.embed(self.group.identity())
    }

    /// The group element g as the algebra element 1*g.
    pub fn embed(&self, g: GroupElement) -> AlgebraElement {
        let mut x = self.zero();
        x.bits[g.0 >> 6] |= 1 << (g.0 & 63);
        x
    }

    pub fn from_support(&self, support: &[GroupElement]) -> AlgebraElement {
        let mut x = self.zero();
        for &g in support {
            x.bits[g.0 >> 6] ^= 1 << (g.0 & 63);
        }
        x
    }

    /// Reinterpret a raw bit pattern (low bit = identity coefficient).
    pub fn from_bits_u64(&self, pattern: u64) -> AlgebraElement {
        assert!(self.dim() <= 64, "pattern constructor needs |G| <= 64");
        let mask = if self.dim() == 64 {
            u64::MAX
        } else {
            (1u64 << self.dim()) - 1
        };
        AlgebraElement {
            group_id: self.id,
            bits: vec![pattern & mask],
        }
    }

    pub fn coeff(&self, x: &AlgebraElement, g: GroupElement) -> bool {
        x.bits[g.0 >> 6] >> (g.0 & 63) & 1 == 1
    }

    pub fn support(&self, x: &AlgebraElement) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in x.bits.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                out.push((w << 6) + word.trailing_zeros() as usize);
                word &= word - 1;
            }
        }
        out
    }

    pub fn support_size(&self, x: &AlgebraElement) -> usize {
        x.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coefficient sum in F2 (parity of the support).
    pub fn augmentation(&self, x: &AlgebraElement) -> u8 {
        (self.support_size(x) & 1) as u8
    }

    pub fn is_zero(&self, x: &AlgebraElement) -> bool {
        x.bits.iter().all(|&w| w == 0)
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        let bits = x
            .bits
            .iter()
            .zip(&y.bits)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(AlgebraElement {
            group_id: self.id,
            bits,
        })
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        let xs = self.support(x);
        let ys = self.support(y);
        let mut out = self.zero();
        let n = self.dim();
        if let Some(table) = &self.mul_table {
            for &a in &xs {
                let row = &table[a * n..(a + 1) * n];
                for &b in &ys {
                    let idx = row[b] as usize;
                    out.bits[idx >> 6] ^= 1 << (idx & 63);
                }
            }
        } else {
            for &a in &xs {
                for &b in &ys {
                    let idx = self.group.mul(GroupElement(a), GroupElement(b)).0;
                    out.bits[idx >> 6] ^= 1 << (idx & 63);
                }
            }
        }
        Ok(out)
    }

    /// x^2 via the coefficientwise squaring law of char 2: bit g of the
    /// result is the parity of {h in supp(x) : h^2 = g}.
    pub fn square(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for s in self.support(x) {
            let idx = self.square_map[s] as usize;
            out.bits[idx >> 6] ^= 1 << (idx & 63);
        }
        out
    }

    pub fn pow(&self, x: &AlgebraElement, mut k: u64) -> Result<AlgebraElement> {
        self.check(x)?;
        let mut acc = self.one();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.square(&base);
            }
        }
        Ok(acc)
    }

    /// Inverse of a normalized unit: x^{2^n - 1} where 2^n = exp(G).
    pub fn inverse(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        if self.augmentation(x) != 1 {
            return Err(Error::NotAUnit);
        }
        let mut acc = self.one();
        let mut cur = x.clone();
        for _ in 0..self.group.exponent_log() {
            acc = self.mul(&acc, &cur)?;
            cur = self.square(&cur);
        }
        Ok(acc)
    }

    /// The bit permutation induced by eta, for hot loops.
    pub fn eta_map(&self, spec: &InvolutionSpec) -> Vec<u32> {
        (0..self.dim())
            .map(|g| crate::group::apply_eta(&self.group, spec, GroupElement(g)).0 as u32)
            .collect()
    }

    pub fn permute(&self, x: &AlgebraElement, map: &[u32]) -> AlgebraElement {
        let mut out = self.zero();
        for s in self.support(x) {
            let idx = map[s] as usize;
            out.bits[idx >> 6] ^= 1 << (idx & 63);
        }
        out
    }

    /// x^eta: permutes coefficients by the group involution.
    pub fn eta(&self, x: &AlgebraElement, spec: &InvolutionSpec) -> AlgebraElement {
        self.permute(x, &self.eta_map(spec))
    }

    /// The sum of all elements of a subgroup.
    pub fn hat(&self, sub: &SubgroupOfG) -> AlgebraElement {
        self.from_support(sub.elements())
    }

    /// F-basis {u(m-1) : 1 != m in M, u in a transversal of carrier/M} of the
    /// ideal of F[carrier] generated by {m-1 : m in M}.
    pub fn ideal_basis(
        &self,
        carrier: &SubgroupOfG,
        sub: &SubgroupOfG,
    ) -> Result<Vec<AlgebraElement>> {
        let reps = left_transversal_in(&self.group, carrier, sub)?;
        let mut basis = Vec::with_capacity(reps.len() * (sub.order() - 1));
        for &u in &reps {
            for m in sub.iter() {
                if m == self.group.identity() {
                    continue;
                }
                basis.push(self.from_support(&[self.group.mul(u, m), u]));
            }
        }
        Ok(basis)
    }

    /// Ideal basis of I(M) in the full algebra FG.
    pub fn ideal_basis_full(&self, sub: &SubgroupOfG) -> Result<Vec<AlgebraElement>> {
        self.ideal_basis(&SubgroupOfG::full(&self.group), sub)
    }

    /// Enumerates 1 + span(basis) by gray-code xor walking.
    pub fn affine_span(&self, basis: &[AlgebraElement]) -> Vec<AlgebraElement> {
        assert!(basis.len() < 30, "span dimension too large to enumerate");
        let mut out = Vec::with_capacity(1 << basis.len());
        let mut cur = self.one();
        out.push(cur.clone());
        for i in 1u64..(1 << basis.len()) {
            let j = i.trailing_zeros() as usize;
            cur = self.add(&cur, &basis[j]).expect("same algebra");
            out.push(cur.clone());
        }
        out
    }
}

/// Rank of a set of bit-vectors over F2 by Gaussian elimination.
pub fn f2_rank(rows: &[AlgebraElement]) -> usize {
    let mut mat: Vec<Vec<u64>> = rows.iter().map(|r| r.bits.clone()).collect();
    let mut rank = 0usize;
    let words = mat.first().map_or(0, |r| r.len());
    for col in 0..words * 64 {
        let (w, b) = (col >> 6, col & 63);
        let Some(pivot) = (rank..mat.len()).find(|&r| mat[r][w] >> b & 1 == 1) else {
            continue;
        };
        mat.swap(rank, pivot);
        let pivot_row = mat[rank].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r != rank && row[w] >> b & 1 == 1 {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}

/// Outcome of the power identities for an element of order q > 2:
/// (h^{-1}+1)^{q-k} = (h+1)^{q-k} for k = 1, 2 (and 4 when q > 4), and the
/// geometric-sum identity h^{-1}+1 = (h+1) + (h+1)^2 + ... + (h+1)^{q-1}.
#[derive(Clone, Debug)]
pub struct InverseIdentityReport {
    pub order: u64,
    pub checked_ks: Vec<u64>,
    pub all_hold: bool,
}

pub fn check_inverse_identities(
    alg: &GroupAlgebra,
    h: GroupElement,
) -> Result<InverseIdentityReport> {
    let q = alg.group().element_order(h);
    if q <= 2 {
        return Err(Error::Invalid(format!(
            "inverse identities need order > 2, element has order {q}"
        )));
    }
    let one = alg.one();
    let hp1 = alg.add(&alg.embed(h), &one)?;
    let hinv_p1 = alg.add(&alg.embed(alg.group().inv(h)), &one)?;
    let mut checked_ks = Vec::new();
    let mut all_hold = true;
    for k in [1u64, 2, 4] {
        if k == 4 && q <= 4 {
            continue;
        }
        checked_ks.push(k);
        let lhs = alg.pow(&hinv_p1, q - k)?;
        let rhs = alg.pow(&hp1, q - k)?;
        all_hold &= lhs == rhs;
    }
    // geometric sum
    let mut sum = alg.zero();
    let mut power = one.clone();
    for _ in 1..q {
        power = alg.mul(&power, &hp1)?;
        sum = alg.add(&sum, &power)?;
    }
    all_hold &= sum == hinv_p1;
    Ok(InverseIdentityReport {
        order: q,
        checked_ks,
        all_hold,
    })
}
