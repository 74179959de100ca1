//! Block-size multiplicity vectors `λ = (λ₁, λ₂, …)`.
//!
//! A `Lambda` is the isomorphism class of a partition (or of a surjection):
//! `λ_k` counts the blocks (fibers) of size `k`. It also indexes monomials
//! `x₁^{λ₁} x₂^{λ₂} ⋯` of power series in infinitely many variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Sparse multiplicities, stored as `(size, multiplicity)` pairs sorted by size
/// with every multiplicity nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Lambda(Vec<(usize, usize)>);

impl Lambda {
    /// The empty type `(0, 0, …)`.
    pub fn zero() -> Self {
        Lambda(Vec::new())
    }

    /// `λ` with a single nonzero entry `λ_size = multiplicity`.
    pub fn single(size: usize, multiplicity: usize) -> Self {
        Lambda::from_pairs([(size, multiplicity)])
    }

    /// Build from arbitrary `(size, multiplicity)` pairs; repeated sizes add up,
    /// zero multiplicities are dropped. Size 0 is not a valid block size.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (size, mult) in pairs {
            assert!(size > 0, "block sizes start at 1");
            *map.entry(size).or_insert(0) += mult;
        }
        Lambda(map.into_iter().filter(|&(_, m)| m > 0).collect())
    }

    /// Count block sizes: `[2, 1, 2]` gives `λ₁ = 1, λ₂ = 2`. Zero sizes are ignored.
    pub fn from_block_sizes<I: IntoIterator<Item = usize>>(sizes: I) -> Self {
        Lambda::from_pairs(sizes.into_iter().filter(|&s| s > 0).map(|s| (s, 1)))
    }

    /// From a dense vector `[λ₁, λ₂, …]`.
    pub fn from_dense(dense: &[usize]) -> Self {
        Lambda::from_pairs(dense.iter().enumerate().map(|(i, &m)| (i + 1, m)))
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.0
            .binary_search_by_key(&size, |&(s, _)| s)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ k·λ_k`, the size of the ground set.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|&(s, m)| s * m).sum()
    }

    /// `Σ λ_k`, the number of blocks.
    pub fn parts(&self) -> usize {
        self.0.iter().map(|&(_, m)| m).sum()
    }

    /// Largest block size, 0 for the empty type.
    pub fn max_size(&self) -> usize {
        self.0.last().map_or(0, |&(s, _)| s)
    }

    pub fn dense(&self) -> Vec<usize> {
        let mut v = vec![0; self.max_size()];
        for &(s, m) in &self.0 {
            v[s - 1] = m;
        }
        v
    }

    /// Block sizes in nondecreasing order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.0
            .iter()
            .flat_map(|&(s, m)| vec![s; m])
            .collect()
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Lambda) -> Lambda {
        Lambda::from_pairs(self.0.iter().chain(other.0.iter()).copied())
    }

    /// The reindexing `x_j ↦ x_{jk}`: every block size is multiplied by `k`.
    pub fn scale(&self, k: usize) -> Lambda {
        assert!(k > 0);
        Lambda(self.0.iter().map(|&(s, m)| (s * k, m)).collect())
    }

    /// `aut(λ) = ∏_k k!^{λ_k} · λ_k!`, the number of automorphisms of a
    /// partition (or surjection) of type `λ`.
    pub fn aut_count(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |acc, &(s, m)| {
            acc * factorial(s).pow(m as u32) * factorial(m)
        })
    }

    /// All types of weight exactly `n`, in lexicographic order of their
    /// block-size sequences (largest block first).
    pub fn of_weight(n: usize) -> Vec<Lambda> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        integer_partitions(n, n, &mut current, &mut out);
        out
    }

    /// All types of weight `1..=max`, plus the zero type first.
    pub fn up_to_weight(max: usize) -> Vec<Lambda> {
        let mut out = vec![Lambda::zero()];
        for w in 1..=max {
            out.extend(Lambda::of_weight(w));
        }
        out
    }

    /// Parse the multiplicity-map syntax `{2:1,3:1}` (quotes around keys allowed).
    pub fn parse_map(src: &str) -> Result<Lambda> {
        let err = |position: usize, message: &str| Error::Parse {
            position,
            message: message.to_string(),
        };
        let bytes = src.as_bytes();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        let number = |i: &mut usize| -> Result<usize> {
            let start = *i;
            let quoted = *i < bytes.len() && bytes[*i] == b'"';
            if quoted {
                *i += 1;
            }
            let digits = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            if digits == *i {
                return Err(err(start, "expected a natural number"));
            }
            let value = src[digits..*i]
                .parse()
                .map_err(|_| err(digits, "number out of range"))?;
            if quoted {
                if *i >= bytes.len() || bytes[*i] != b'"' {
                    return Err(err(*i, "expected closing quote"));
                }
                *i += 1;
            }
            Ok(value)
        };
        skip_ws(&mut i);
        if i >= bytes.len() || bytes[i] != b'{' {
            return Err(err(i, "expected '{'"));
        }
        i += 1;
        let mut pairs = Vec::new();
        skip_ws(&mut i);
        if i < bytes.len() && bytes[i] == b'}' {
            i += 1;
        } else {
            loop {
                skip_ws(&mut i);
                let key_pos = i;
                let size = number(&mut i)?;
                if size == 0 {
                    return Err(err(key_pos, "block size must be at least 1"));
                }
                skip_ws(&mut i);
                if i >= bytes.len() || bytes[i] != b':' {
                    return Err(err(i, "expected ':'"));
                }
                i += 1;
                skip_ws(&mut i);
                let mult = number(&mut i)?;
                pairs.push((size, mult));
                skip_ws(&mut i);
                match bytes.get(i) {
                    Some(b',') => i += 1,
                    Some(b'}') => {
                        i += 1;
                        break;
                    }
                    _ => return Err(err(i, "expected ',' or '}'")),
                }
            }
        }
        skip_ws(&mut i);
        if i != bytes.len() {
            return Err(err(i, "trailing input"));
        }
        Ok(Lambda::from_pairs(pairs))
    }
}

fn integer_partitions(n: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Lambda>) {
    if n == 0 {
        out.push(Lambda::from_block_sizes(current.iter().copied()));
        return;
    }
    for part in (1..=max.min(n)).rev() {
        current.push(part);
        integer_partitions(n - part, part, current, out);
        current.pop();
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (s, m)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}:{m}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (s, m) in &self.0 {
            map.serialize_entry(&s.to_string(), m)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Lambda {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct LambdaVisitor;

        impl<'de> Visitor<'de> for LambdaVisitor {
            type Value = Lambda;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from block size to multiplicity")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Lambda, A::Error> {
                let mut pairs = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, usize>()? {
                    let size: usize = k.parse().map_err(de::Error::custom)?;
                    if size == 0 {
                        return Err(de::Error::custom("block size must be at least 1"));
                    }
                    pairs.push((size, v));
                }
                Ok(Lambda::from_pairs(pairs))
            }
        }

        deserializer.deserialize_map(LambdaVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_parts_and_aut() {
        let l = Lambda::from_dense(&[1, 1]);
        assert_eq!(l.weight(), 3);
        assert_eq!(l.parts(), 2);
        assert_eq!(l.aut_count(), BigUint::from(2u32));
        assert_eq!(Lambda::single(1, 4).aut_count(), BigUint::from(24u32));
        assert_eq!(Lambda::zero().aut_count(), BigUint::one());
        assert_eq!(Lambda::single(3, 1).aut_count(), BigUint::from(6u32));
    }

    #[test]
    fn counts_of_types() {
        let counts: Vec<usize> = (0..=7).map(|n| Lambda::of_weight(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(Lambda::up_to_weight(5).len(), 1 + 1 + 2 + 3 + 5 + 7);
    }

    #[test]
    fn serde_shape() {
        let l = Lambda::from_pairs([(2, 1), (3, 1)]);
        assert_eq!(serde_json::to_string(&l).unwrap(), r#"{"2":1,"3":1}"#);
        let back: Lambda = serde_json::from_str(r#"{"3":1,"2":1}"#).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<Lambda>(r#"{"0":1}"#).is_err());
    }

    #[test]
    fn parse_map_syntax() {
        assert_eq!(
            Lambda::parse_map("{2:1,3:1}").unwrap(),
            Lambda::from_pairs([(2, 1), (3, 1)])
        );
        assert_eq!(Lambda::parse_map(" { \"1\" : 2 } ").unwrap(), Lambda::single(1, 2));
        assert_eq!(Lambda::parse_map("{}").unwrap(), Lambda::zero());
        match Lambda::parse_map("{2:1;3:1}") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Lambda::parse_map("{0:1}"), Err(Error::Parse { position: 1, .. })));
        assert!(Lambda::parse_map("{1:1} x").is_err());
    }

    #[test]
    fn scale_and_add() {
        let l = Lambda::from_dense(&[1, 1]);
        assert_eq!(l.scale(2), Lambda::from_pairs([(2, 1), (4, 1)]));
        assert_eq!(l.add(&Lambda::single(1, 2)), Lambda::from_dense(&[3, 1]));
        assert_eq!(l.to_string(), "{1:1,2:1}");
    }
}
