//! Textual element format: a sum of monomials like `1 + a1^2*a2 + a1^3`,
//! with generators named `a1..at`. Printing and parsing round-trip.

use crate::algebra::{AlgebraElement, GroupAlgebra};
use crate::error::{Error, Result};
use crate::group::GroupElement;

pub fn format_element(alg: &GroupAlgebra, x: &AlgebraElement) -> String {
    let support = alg.support(x);
    if support.is_empty() {
        return "0".to_string();
    }
    let monomials: Vec<String> = support
        .iter()
        .map(|&idx| format_monomial(alg, GroupElement(idx)))
        .collect();
    monomials.join(" + ")
}

fn format_monomial(alg: &GroupAlgebra, g: GroupElement) -> String {
    let exps = alg.group().exponents(g);
    let factors: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("a{}", i + 1)
            } else {
                format!("a{}^{}", i + 1, e)
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

pub fn parse_element(alg: &GroupAlgebra, s: &str) -> Result<AlgebraElement> {
    let s = s.trim();
    if s == "0" {
        return Ok(alg.zero());
    }
    let mut out = alg.zero();
    for monomial in s.split('+') {
        let g = parse_monomial(alg, monomial.trim())?;
        out = alg.add(&out, &alg.embed(g))?;
    }
    Ok(out)
}

fn parse_monomial(alg: &GroupAlgebra, s: &str) -> Result<GroupElement> {
    if s.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    if s == "1" {
        return Ok(alg.group().identity());
    }
    let mut exps = vec![0u64; alg.group().rank()];
    for factor in s.split('*') {
        let factor = factor.trim();
        let body = factor
            .strip_prefix('a')
            .ok_or_else(|| Error::Parse(format!("bad factor {factor:?}")))?;
        let (gen, exp) = match body.split_once('^') {
            Some((g, e)) => (g, e),
            None => (body, "1"),
        };
        let gen: usize = gen
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator index in {factor:?}")))?;
        let exp: u64 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
        if gen == 0 || gen > alg.group().rank() {
            return Err(Error::Parse(format!(
                "generator a{gen} out of range 1..={}",
                alg.group().rank()
            )));
        }
        exps[gen - 1] = (exps[gen - 1] + exp) % alg.group().factor_orders()[gen - 1];
    }
    alg.group().from_exponents(&exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianTwoGroup;

    fn alg(orders: &[u64]) -> GroupAlgebra {
        GroupAlgebra::new(AbelianTwoGroup::new(orders.to_vec()).unwrap())
    }

    #[test]
    fn format_examples() {
        let a = alg(&[4, 2]);
        let x = a.from_support(&[
            GroupElement(0),
            a.group().from_exponents(&[2, 1]).unwrap(),
            a.group().from_exponents(&[3, 0]).unwrap(),
        ]);
        assert_eq!(format_element(&a, &x), "1 + a1^3 + a1^2*a2");
        assert_eq!(format_element(&a, &a.zero()), "0");
        assert_eq!(format_element(&a, &a.one()), "1");
    }

    #[test]
    fn parse_examples() {
        let a = alg(&[4, 2]);
        let x = parse_element(&a, "1 + a1^2*a2 + a1^3").unwrap();
        assert_eq!(a.support_size(&x), 3);
        assert!(a.coeff(&x, a.group().from_exponents(&[2, 1]).unwrap()));
        assert!(parse_element(&a, "b2").is_err());
        assert!(parse_element(&a, "a9").is_err());
        assert_eq!(parse_element(&a, "0").unwrap(), a.zero());
    }

    #[test]
    fn roundtrip() {
        let a = alg(&[4, 2]);
        for pattern in 0..(1u64 << 8) {
            let x = a.from_bits_u64(pattern);
            let printed = format_element(&a, &x);
            assert_eq!(parse_element(&a, &printed).unwrap(), x);
        }
    }
}
