use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A numerical divisor class in the basis `{s, f, e1, ..., en}`.
///
/// `s` is a section of the ruling with `s^2 = 2 - 2g`, `f` the fiber class and
/// `e_i` the total transform of the i-th exceptional curve. The length of `e`
/// is the number of blowups of the surface the class lives on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub s: i64,
    pub f: i64,
    pub e: Vec<i64>,
}

impl DivisorClass {
    pub fn zero(n: usize) -> Self {
        DivisorClass {
            s: 0,
            f: 0,
            e: vec![0; n],
        }
    }

    pub fn section(n: usize) -> Self {
        DivisorClass {
            s: 1,
            ..Self::zero(n)
        }
    }

    pub fn fiber(n: usize) -> Self {
        DivisorClass {
            f: 1,
            ..Self::zero(n)
        }
    }

    /// `e_{index+1}`, with `index` counted from zero.
    pub fn exceptional(index: usize, n: usize) -> Self {
        let mut d = Self::zero(n);
        d.e[index] = 1;
        d
    }

    pub fn from_exceptional(e: Vec<i64>) -> Self {
        DivisorClass { s: 0, f: 0, e }
    }

    /// Number of blowups of the ambient surface.
    pub fn n(&self) -> usize {
        self.e.len()
    }

    pub fn is_zero(&self) -> bool {
        self.s == 0 && self.f == 0 && self.e.iter().all(|&c| c == 0)
    }

    /// True when the class lies in `span{e_1..e_n}`.
    pub fn is_exceptional_supported(&self) -> bool {
        self.s == 0 && self.f == 0
    }

    /// Pullback to a surface with `n >= self.n()` blowups, the extra blowups
    /// coming after the existing ones.
    pub fn pulled_back(&self, n: usize) -> Result<Self> {
        if n < self.n() {
            return Err(Error::StageMismatch {
                found: self.n(),
                target: n,
            });
        }
        let mut e = self.e.clone();
        e.resize(n, 0);
        Ok(DivisorClass {
            s: self.s,
            f: self.f,
            e,
        })
    }

    fn check_same_dim(&self, other: &Self) {
        assert_eq!(
            self.n(),
            other.n(),
            "divisor classes live on surfaces with different blowup counts"
        );
    }

    /// Parses expressions such as `2s - f + e1 - 3*e2` on a surface with `n`
    /// blowups. Exceptional indices are 1-based.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let err = |msg: String| Error::Parse(format!("divisor `{text}`: {msg}"));
        let mut out = Self::zero(n);
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err("empty expression".into()));
        }
        let mut pos = 0;
        let mut first = true;
        while pos < chars.len() {
            let mut sign = 1i64;
            match chars[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = -1;
                    pos += 1;
                }
                _ if first => {}
                c => return Err(err(format!("expected `+` or `-`, found `{c}`"))),
            }
            first = false;

            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff = if pos > start {
                let digits: String = chars[start..pos].iter().collect();
                digits
                    .parse::<i64>()
                    .map_err(|_| err(format!("coefficient `{digits}` out of range")))?
            } else {
                1
            };
            if pos < chars.len() && chars[pos] == '*' {
                if pos == start {
                    return Err(err("`*` without a coefficient".into()));
                }
                pos += 1;
            }
            let coeff = coeff * sign;

            let slot = match chars.get(pos) {
                Some('s') => {
                    pos += 1;
                    &mut out.s
                }
                Some('f') => {
                    pos += 1;
                    &mut out.f
                }
                Some('e') => {
                    pos += 1;
                    let istart = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let digits: String = chars[istart..pos].iter().collect();
                    let index: usize = digits
                        .parse()
                        .map_err(|_| err("`e` must be followed by an index".into()))?;
                    if index == 0 || index > n {
                        return Err(err(format!("e{index} out of range 1..={n}")));
                    }
                    &mut out.e[index - 1]
                }
                // a bare explicit zero is allowed as a term
                Some('+') | Some('-') | None if pos > start && coeff == 0 => continue,
                Some(c) => return Err(err(format!("unknown basis element `{c}`"))),
                None => return Err(err("term has no basis element".into())),
            };
            *slot = slot
                .checked_add(coeff)
                .ok_or_else(|| err("coefficient overflow".into()))?;
        }
        Ok(out)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [("s".to_string(), self.s), ("f".to_string(), self.f)]
            .into_iter()
            .chain(
                self.e
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (format!("e{}", i + 1), c)),
            )
            .filter(|(_, c)| *c != 0);
        let mut wrote = false;
        for (name, c) in terms {
            let sep = match (wrote, c < 0) {
                (false, false) => "",
                (false, true) => "-",
                (true, false) => " + ",
                (true, true) => " - ",
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(out, "{sep}{name}")?;
            } else {
                write!(out, "{sep}{mag}{name}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(out, "0")?;
        }
        Ok(())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.check_same_dim(rhs);
        DivisorClass {
            s: self.s + rhs.s,
            f: self.f + rhs.f,
            e: self.e.iter().zip(&rhs.e).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self * -1
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Mul<i64> for &DivisorClass {
    type Output = DivisorClass;
    fn mul(self, k: i64) -> DivisorClass {
        DivisorClass {
            s: self.s * k,
            f: self.f * k,
            e: self.e.iter().map(|c| c * k).collect(),
        }
    }
}

impl Mul<i64> for DivisorClass {
    type Output = DivisorClass;
    fn mul(self, k: i64) -> DivisorClass {
        &self * k
    }
}
