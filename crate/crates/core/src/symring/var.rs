use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// A named indeterminate such as `z1`, `k10` or `T1`.
///
/// Variables compare in natural order: alphabetic runs compare as strings and
/// digit runs compare numerically, so `k9 < k10`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Result<Self, Error> {
        if !is_valid_name(name) {
            return Err(Error::InvalidVariable(name.to_string()));
        }
        Ok(Var(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

/// `[A-Za-z][A-Za-z0-9_]*`
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut a, mut b) = (a.as_bytes(), b.as_bytes());
    loop {
        match (a.first(), b.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let la = a.iter().take_while(|c| c.is_ascii_digit()).count();
                let lb = b.iter().take_while(|c| c.is_ascii_digit()).count();
                let (da, db) = (&a[..la], &b[..lb]);
                let ta = trim_zeros(da);
                let tb = trim_zeros(db);
                let ord = ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb));
                // "k01" and "k1" are distinct variables; break the tie on raw length
                let ord = ord.then_with(|| la.cmp(&lb));
                if ord != Ordering::Equal {
                    return ord;
                }
                a = &a[la..];
                b = &b[lb..];
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(y);
                }
                a = &a[1..];
                b = &b[1..];
            }
        }
    }
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let start = digits.iter().take_while(|&&c| c == b'0').count();
    &digits[start..]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Var {
        Var::new(s).unwrap()
    }

    #[test]
    fn natural_order() {
        assert!(v("k9") < v("k10"));
        assert!(v("k2") < v("x1"));
        assert!(v("T1") < v("k1"));
        assert!(v("z1") < v("z1a"));
        assert!(v("k01") != v("k1"));
        assert_ne!(v("k01").cmp(&v("k1")), Ordering::Equal);
    }

    #[test]
    fn name_grammar() {
        assert!(Var::new("x_5").is_ok());
        assert!(Var::new("5x").is_err());
        assert!(Var::new("").is_err());
        assert!(Var::new("a-b").is_err());
    }
}
