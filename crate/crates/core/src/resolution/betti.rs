use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Graded Betti numbers `b_{i,j}`: the number of summands `R(-j)` in the
/// `i`-th module of a free resolution of `R/I` (so `b_{0,0} = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), u64>,
    minimal: bool,
}

impl BettiTable {
    pub fn new(minimal: bool) -> Self {
        BettiTable {
            entries: BTreeMap::new(),
            minimal,
        }
    }

    /// Table of `R/I` from the modules `F_1, F_2, ...`, each given as
    /// `(count, twist)` pairs; `F_0 = R` is implied.
    pub fn from_modules(modules: &[&[(u64, i64)]], minimal: bool) -> Self {
        let mut t = BettiTable::new(minimal);
        t.add(0, 0, 1);
        for (i, m) in modules.iter().enumerate() {
            for &(b, j) in m.iter() {
                t.add(i + 1, j, b);
            }
        }
        t
    }

    pub fn add(&mut self, i: usize, j: i64, b: u64) {
        if b == 0 {
            return;
        }
        *self.entries.entry((i, j)).or_insert(0) += b;
    }

    /// Removes `b` copies of `R(-j)` from `F_i`.
    pub fn remove(&mut self, i: usize, j: i64, b: u64) -> Result<()> {
        let have = self.get(i, j);
        if have < b {
            return Err(Error::TwistMismatch(format!(
                "cannot cancel {b} copies of R(-{j}) from F_{i} (only {have})"
            )));
        }
        if have == b {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), have - b);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn set_minimal(&mut self, minimal: bool) {
        self.minimal = minimal;
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn rank(&self, i: usize) -> u64 {
        self.entries.range((i, i64::MIN)..=(i, i64::MAX)).map(|(_, &b)| b).sum()
    }

    /// `(twist, count)` pairs of `F_i`, by increasing twist.
    pub fn module(&self, i: usize) -> Vec<(i64, u64)> {
        self.entries
            .range((i, i64::MIN)..=(i, i64::MAX))
            .map(|(&(_, j), &b)| (j, b))
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// `Σ_i (-1)^i Σ_j b_{i,j} t^j`, which equals the numerator of the
    /// Hilbert series over `(1 - t)^n`.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let mut out: Vec<i64> = Vec::new();
        for (&(i, j), &b) in &self.entries {
            assert!(j >= 0, "negative twist in a table of R/I");
            let j = j as usize;
            if out.len() <= j {
                out.resize(j + 1, 0);
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out[j] += sign * b as i64;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Entrywise `self <= other`.
    pub fn dominated_by(&self, other: &BettiTable) -> bool {
        self.entries.iter().all(|(&(i, j), &b)| b <= other.get(i, j))
    }

    /// Entrywise comparison ignoring the minimality flag.
    pub fn same_entries(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }

    /// Whether `b_{i,j} = b_{len-i, k-j}` for all entries.
    pub fn is_symmetric(&self, len: usize, k: i64) -> bool {
        self.entries.iter().all(|(&(i, j), &b)| i <= len && self.get(len - i, k - j) == b)
    }

    /// Compact module notation, e.g. `R <- 3R(-2)+4R(-3) <- 12R(-4) <- ...`.
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..=self.length() {
            let m = self.module(i);
            let s: Vec<String> = m
                .iter()
                .map(|&(j, b)| match (b, j) {
                    (1, 0) => "R".to_string(),
                    (1, j) => format!("R(-{j})"),
                    (b, 0) => format!("{b}R"),
                    (b, j) => format!("{b}R(-{j})"),
                })
                .collect();
            parts.push(if s.is_empty() { "0".into() } else { s.join("+") });
        }
        parts.join(" <- ")
    }
}

impl fmt::Display for BettiTable {
    /// Standard Betti diagram: column `i`, row `j - i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.length();
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let (lo, hi) = match (rows.first(), rows.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return writeln!(f, "(empty)"),
        };
        let width = self.entries.values().map(|b| b.to_string().len()).max().unwrap_or(1).max(len.to_string().len());
        write!(f, "{:>7}", "")?;
        for i in 0..=len {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>7}", "total:")?;
        for i in 0..=len {
            write!(f, " {:>width$}", self.rank(i))?;
        }
        writeln!(f)?;
        for r in lo..=hi {
            write!(f, "{:>7}", format!("{r}:"))?;
            for i in 0..=len {
                let b = self.get(i, r + i as i64);
                if b == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {:>width$}", b)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    length: usize,
    entries: Vec<(usize, i64, u64)>,
    minimal: bool,
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BettiJson {
            length: self.length(),
            entries: self.entries().collect(),
            minimal: self.minimal,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BettiJson::deserialize(d)?;
        let mut t = BettiTable::new(j.minimal);
        for (i, jj, b) in j.entries {
            t.add(i, jj, b);
        }
        if t.length() != j.length {
            return Err(serde::de::Error::custom("length does not match entries"));
        }
        Ok(t)
    }
}
