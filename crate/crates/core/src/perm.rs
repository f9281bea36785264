use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A bijection on `{0, …, n−1}`, stored as its image sequence.
///
/// Composition follows the function convention: `a.compose(&b)` is `a ∘ b`,
/// i.e. `b` is applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation);
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation of `n` points from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = alloc::vec![false; n];
        for cycle in cycles {
            for (k, &v) in cycle.iter().enumerate() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
                if touched[v] {
                    return Err(Error::NotAPermutation);
                }
                touched[v] = true;
                images[v] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut out = Permutation::identity(self.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Order in the symmetric group: the lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    /// All cycles, fixed points included, each starting at its smallest
    /// element and listed by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.0[v];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation with fixed points omitted; the identity is `"id"`.
    pub fn to_cycle_string<F: Fn(usize) -> String>(&self, label: F) -> String {
        let mut s = String::new();
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            s.push('(');
            for (k, &v) in c.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                s.push_str(&label(v));
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("id");
        }
        s
    }

    /// Parses cycle notation such as `"(v1 v2)(v5 v6)(v3)"`.
    ///
    /// `"id"`, `"()"` and the empty string denote the identity. Names inside a
    /// cycle are separated by whitespace or commas and resolved by `lookup`.
    pub fn parse_cycles<F: Fn(&str) -> Option<usize>>(
        text: &str,
        n: usize,
        lookup: F,
    ) -> Result<Permutation> {
        let t = text.trim();
        if t.is_empty() || t == "id" || t == "()" {
            return Ok(Permutation::identity(n));
        }
        let bad = |msg: &str| Error::BadPermutation(alloc::format!("{msg} in {text:?}"));
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for name in body.split(|c: char| c.is_whitespace() || c == ',') {
                if name.is_empty() {
                    continue;
                }
                let v =
                    lookup(name).ok_or_else(|| bad(&alloc::format!("unknown vertex {name:?}")))?;
                cycle.push(v);
            }
            cycles.push(cycle);
            rest = &rest[close + 1..];
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(n, &refs).map_err(|_| bad("repeated vertex"))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string(|i| alloc::format!("v{}", i + 1)))
    }
}

/// Resolves `v1, v2, …` style names to zero-based indices.
pub fn default_lookup(n: usize) -> impl Fn(&str) -> Option<usize> {
    move |name: &str| {
        let idx: usize = name.strip_prefix('v')?.parse().ok()?;
        (1..=n).contains(&idx).then(|| idx - 1)
    }
}

pub(crate) fn default_label(i: usize) -> String {
    let mut s = String::from("v");
    s.push_str(&(i + 1).to_string());
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(s, n, default_lookup(n)).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let a = p(6, "(v1 v2)(v5 v6)(v3)(v4)");
        assert_eq!(a.images(), &[1, 0, 2, 3, 5, 4]);
        assert_eq!(a.to_string(), "(v1 v2)(v5 v6)");
        assert_eq!(p(4, "id"), Permutation::identity(4));
        assert!(Permutation::parse_cycles("(v1 v1)", 2, default_lookup(2)).is_err());
        assert!(Permutation::parse_cycles("(v1 v9)", 2, default_lookup(2)).is_err());
        assert!(Permutation::parse_cycles("v1 v2", 2, default_lookup(2)).is_err());
    }

    #[test]
    fn composition_convention() {
        // a = (v1 v2), b = (v2 v3); (a∘b)(v2) = a(v3) = v3.
        let a = p(3, "(v1 v2)");
        let b = p(3, "(v2 v3)");
        let ab = a.compose(&b);
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.compose(&ab.inverse()), Permutation::identity(3));
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        assert_eq!(p(5, "(v1 v2)(v3 v4 v5)").order(), 6);
        assert_eq!(Permutation::identity(3).order(), 1);
        let g = p(9, "(v1 v2 v3 v4 v5 v6 v7 v8 v9)");
        assert_eq!(g.order(), 9);
        assert_eq!(g.pow(3).order(), 3);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(alloc::vec![0, 0]).is_err());
        assert!(Permutation::from_images(alloc::vec![2, 0]).is_err());
    }
}
