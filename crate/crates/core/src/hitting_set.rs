//! Exact bounded search tree for Hitting Set with sets of size at most 3.
//!
//! Text format: a header `p hs <nelems> <nsets>` followed by one set per
//! line as space-separated element ids in `1..=nelems`. Lines starting with
//! `c` are comments.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A set family over positive integer elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HsInstance {
    elements: BTreeSet<u32>,
    sets: Vec<Vec<u32>>,
}

impl HsInstance {
    /// Every set must be non-empty, contain only positive ids, and lie inside
    /// `elements`. Sets are stored sorted and deduplicated, in given order.
    pub fn new(
        elements: impl IntoIterator<Item = u32>,
        sets: impl IntoIterator<Item = Vec<u32>>,
    ) -> Result<Self> {
        let elements: BTreeSet<u32> = elements.into_iter().collect();
        if elements.contains(&0) {
            return Err(Error::InvalidInstance("element ids must be positive".into()));
        }
        let mut normalized = Vec::new();
        for (i, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::InvalidInstance(format!("set {} is empty", i + 1)));
            }
            if let Some(e) = set.iter().find(|e| !elements.contains(e)) {
                return Err(Error::InvalidInstance(format!(
                    "set {} contains unknown element {e}",
                    i + 1
                )));
            }
            normalized.push(set);
        }
        Ok(HsInstance {
            elements,
            sets: normalized,
        })
    }

    /// Instance whose element universe is the union of `sets`.
    pub fn from_sets(sets: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let sets: Vec<Vec<u32>> = sets.into_iter().collect();
        let elements: BTreeSet<u32> = sets.iter().flatten().copied().collect();
        HsInstance::new(elements, sets)
    }

    pub fn elements(&self) -> &BTreeSet<u32> {
        &self.elements
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Removes singleton sets by forcing their element into the hitting set.
    /// Returns the reduced instance, the remaining budget, and the forced
    /// elements, or `None` if more than `k` elements are forced.
    pub fn force_singletons(&self, k: usize) -> Option<(HsInstance, usize, Vec<u32>)> {
        let forced: BTreeSet<u32> = self
            .sets
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s[0])
            .collect();
        let budget = k.checked_sub(forced.len())?;
        let sets = self
            .sets
            .iter()
            .filter(|s| !s.iter().any(|e| forced.contains(e)))
            .cloned()
            .collect();
        let reduced = HsInstance {
            elements: self.elements.clone(),
            sets,
        };
        Some((reduced, budget, forced.into_iter().collect()))
    }
}

/// Result of a bounded hitting-set search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsResult {
    pub found: bool,
    /// Sorted; empty when not found.
    pub hitting_set: Vec<u32>,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

/// Whether `h` intersects every set.
pub fn hs_verify(inst: &HsInstance, h: &[u32]) -> bool {
    inst.sets.iter().all(|s| s.iter().any(|e| h.contains(e)))
}

/// Decides whether a hitting set of size at most `k` exists.
///
/// At every node, sets that are supersets of another unhit set are dropped,
/// then the first unhit set of minimum size (in insertion order) is chosen
/// and each of its elements is tried in ascending order. The tree has at
/// most `3^k` leaves.
pub fn hs3_solve(inst: &HsInstance, k: usize) -> Result<HsResult> {
    if let Some((i, s)) = inst.sets.iter().enumerate().find(|(_, s)| s.len() > 3) {
        return Err(Error::InvalidInstance(format!(
            "set {} has {} elements, at most 3 allowed",
            i + 1,
            s.len()
        )));
    }
    let k = k.min(inst.elements.len());
    let unhit: Vec<&[u32]> = inst.sets.iter().map(Vec::as_slice).collect();
    let mut chosen = Vec::new();
    let mut nodes = 0;
    let found = branch(&unhit, k, &mut chosen, &mut nodes);
    if found {
        chosen.sort_unstable();
    } else {
        chosen.clear();
    }
    Ok(HsResult {
        found,
        hitting_set: chosen,
        nodes,
    })
}

fn branch(unhit: &[&[u32]], k: usize, chosen: &mut Vec<u32>, nodes: &mut u64) -> bool {
    *nodes += 1;
    if unhit.is_empty() {
        return true;
    }
    if k == 0 {
        return false;
    }
    let kept = drop_supersets(unhit);
    let pivot = kept
        .iter()
        .min_by_key(|s| s.len())
        .copied()
        .expect("non-empty");
    for &e in pivot {
        let rest: Vec<&[u32]> = kept.iter().copied().filter(|s| !s.contains(&e)).collect();
        chosen.push(e);
        if branch(&rest, k - 1, chosen, nodes) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Keeps a set only if no earlier-kept or other set is a subset of it; of
/// duplicates the first survives.
fn drop_supersets<'a>(sets: &[&'a [u32]]) -> Vec<&'a [u32]> {
    let is_subset = |a: &[u32], b: &[u32]| a.iter().all(|e| b.contains(e));
    sets.iter()
        .enumerate()
        .filter(|&(i, s)| {
            !sets.iter().enumerate().any(|(j, t)| {
                j != i && is_subset(t, s) && (t.len() < s.len() || j < i)
            })
        })
        .map(|(_, s)| *s)
        .collect()
}

/// Parses the `p hs <nelems> <nsets>` text format.
pub fn parse_hs(text: &str) -> Result<HsInstance> {
    let mut header: Option<(u32, usize)> = None;
    let mut sets = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let ["p", "hs", n, m] = parts.as_slice() else {
                return Err(err(format!("malformed problem line `{line}`")));
            };
            let n = n
                .parse()
                .map_err(|_| err(format!("invalid element count `{n}`")))?;
            let m = m
                .parse()
                .map_err(|_| err(format!("invalid set count `{m}`")))?;
            if header.replace((n, m)).is_some() {
                return Err(err("duplicate problem line".into()));
            }
            continue;
        }
        let Some((n, _)) = header else {
            return Err(err("set data before `p hs` header".into()));
        };
        let mut set = Vec::new();
        for token in line.split_whitespace() {
            let e: u32 = token
                .parse()
                .map_err(|_| err(format!("invalid element `{token}`")))?;
            if e == 0 || e > n {
                return Err(err(format!("element {e} outside 1..={n}")));
            }
            set.push(e);
        }
        sets.push(set);
    }
    let Some((n, m)) = header else {
        return Err(Error::Parse {
            line: 0,
            message: "missing `p hs` header".into(),
        });
    };
    if sets.len() != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header declares {m} sets but {} were read", sets.len()),
        });
    }
    HsInstance::new(1..=n, sets)
}

/// Writes the text format; the element count is the largest element id.
pub fn write_hs(inst: &HsInstance) -> String {
    let n = inst.elements.last().copied().unwrap_or(0);
    let mut out = format!("p hs {n} {}\n", inst.sets.len());
    for set in &inst.sets {
        let line: Vec<String> = set.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
