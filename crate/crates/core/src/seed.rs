//! Per-degree seeds `N_{3d-1,1}` and `N_{1,3d-1}` from open Gromov-Witten
//! invariants (the coefficients of the local P^2 slab function).

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Coefficients of `t^1..t^5` in the slab function of local P^2.
const DEFAULT_SLAB: [(u32, i64); 5] = [(1, -2), (2, 5), (3, -32), (4, 286), (5, -3038)];

/// Open invariants `n_{dℓ+h}`, indexed by line degree `d >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlabCoefficients {
    n: BTreeMap<u32, Rational>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SlabFile {
    slab: BTreeMap<String, Rational>,
}

impl Default for SlabCoefficients {
    fn default() -> Self {
        default_slab_table()
    }
}

pub fn default_slab_table() -> SlabCoefficients {
    SlabCoefficients {
        n: DEFAULT_SLAB
            .iter()
            .map(|&(d, c)| (d, Rational::from_integer(c)))
            .collect(),
    }
}

impl SlabCoefficients {
    pub fn empty() -> Self {
        SlabCoefficients { n: BTreeMap::new() }
    }

    pub fn get(&self, d: u32) -> Result<&Rational> {
        self.n.get(&d).ok_or(Error::CoefficientNotConfigured(d))
    }

    pub fn set(&mut self, d: u32, value: Rational) -> Result<()> {
        if d == 0 {
            return Err(Error::InvalidArgument("slab degree must be at least 1".into()));
        }
        self.n.insert(d, value);
        Ok(())
    }

    /// Largest `D` with every degree `1..=D` configured.
    pub fn max_contiguous_degree(&self) -> u32 {
        (1..).take_while(|d| self.n.contains_key(d)).last().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.n.iter().map(|(d, c)| (*d, c))
    }

    /// Applies the entries of a `{"slab": {"1": "-2", ...}}` document on
    /// top of `self`.
    pub fn merge_json<R: Read>(&mut self, r: R) -> Result<()> {
        let file: SlabFile = serde_json::from_reader(r)?;
        for (key, value) in file.slab {
            let d: u32 = key
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("slab key {key:?} is not a degree")))?;
            self.set(d, value)?;
        }
        Ok(())
    }

    /// Defaults overridden by the file at `path`.
    pub fn from_file(path: &Path) -> Result<Self> {
        let mut slab = default_slab_table();
        slab.merge_json(std::fs::File::open(path)?)?;
        Ok(slab)
    }
}

/// `N_{3d-1,1} = (-1)^e (e-1) n_{dℓ+h}` with `e = 3d`.
pub fn seed_top(d: u32, slab: &SlabCoefficients) -> Result<Rational> {
    let n = slab.get(d)?;
    let e = 3 * d as i64;
    let sign = if e % 2 == 0 { 1 } else { -1 };
    Ok(n * &Rational::from_integer(sign * (e - 1)))
}

/// `N_{1,3d-1} = N_{3d-1,1} / (3d-1)^2`.
pub fn seed_bottom(d: u32, top: &Rational) -> Rational {
    let m = 3 * d as i64 - 1;
    top.checked_div(&Rational::from_integer(m * m))
        .expect("3d - 1 is nonzero for integer d")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn defaults() {
        let s = default_slab_table();
        assert_eq!(s.get(1).unwrap(), &r(-2));
        assert_eq!(s.get(4).unwrap(), &r(286));
        assert!(matches!(s.get(6), Err(Error::CoefficientNotConfigured(6))));
        assert_eq!(s.max_contiguous_degree(), 5);
        assert_eq!(
            Error::CoefficientNotConfigured(6).to_string(),
            "coefficient not configured for d=6"
        );
    }

    #[test]
    fn top_seeds() {
        let s = default_slab_table();
        assert_eq!(seed_top(1, &s).unwrap(), r(4));
        assert_eq!(seed_top(2, &s).unwrap(), r(25));
        assert_eq!(seed_top(3, &s).unwrap(), r(256));
        assert!(seed_top(6, &s).is_err());
    }

    #[test]
    fn bottom_seeds() {
        assert_eq!(seed_bottom(1, &r(4)), r(1));
        assert_eq!(seed_bottom(2, &r(25)), r(1));
        assert_eq!(seed_bottom(3, &r(256)), r(4));
    }

    #[test]
    fn seeds_are_positive_and_consistent() {
        let s = default_slab_table();
        for (d, _) in s.iter() {
            let top = seed_top(d, &s).unwrap();
            assert!(top.is_positive(), "d = {d}");
            let m = r(3 * d as i64 - 1);
            assert_eq!(seed_bottom(d, &top) * &m * &m, top);
        }
    }

    #[test]
    fn json_override() {
        let mut s = default_slab_table();
        s.merge_json(r#"{"slab": {"2": "6", "6": "-40/3"}}"#.as_bytes())
            .unwrap();
        assert_eq!(s.get(2).unwrap(), &r(6));
        assert_eq!(s.get(6).unwrap(), &Rational::new(-40, 3).unwrap());
        assert_eq!(s.get(1).unwrap(), &r(-2));
        assert_eq!(s.max_contiguous_degree(), 6);
        assert!(s.merge_json(r#"{"slab": {"x": "1"}}"#.as_bytes()).is_err());
        assert!(s.merge_json(r#"{"slab": {"0": "1"}}"#.as_bytes()).is_err());
    }
}
