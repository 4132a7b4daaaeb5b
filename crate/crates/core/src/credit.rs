//! Credit invariant and cost of a canonical 2-edge cover, in exact quarters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cover::{check_canonical, describe_violations, ComponentClass, TwoEdgeCover};
use crate::error::{Error, Result};
use crate::graph::EdgeId;

/// A multiple of 1/4, stored as the number of quarters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quarters(pub i64);

impl Quarters {
    pub const ZERO: Quarters = Quarters(0);

    pub fn whole(n: i64) -> Self {
        Quarters(4 * n)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 4.0
    }

    /// Reduced fraction such as `25/4`, `11` or `-3/2`.
    pub fn to_fraction(self) -> String {
        let (mut num, mut den) = (self.0, 4i64);
        while den > 1 && num % 2 == 0 {
            num /= 2;
            den /= 2;
        }
        if den == 1 {
            num.to_string()
        } else {
            format!("{num}/{den}")
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.split_once('/') {
            None => s.trim().parse::<i64>().ok().map(Quarters::whole),
            Some((a, b)) => {
                let num: i64 = a.trim().parse().ok()?;
                let den: i64 = b.trim().parse().ok()?;
                if den <= 0 || 4 % den != 0 {
                    return None;
                }
                Some(Quarters(num * (4 / den)))
            }
        }
    }
}

impl fmt::Display for Quarters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_fraction())
    }
}

impl Add for Quarters {
    type Output = Quarters;
    fn add(self, o: Quarters) -> Quarters {
        Quarters(self.0 + o.0)
    }
}

impl AddAssign for Quarters {
    fn add_assign(&mut self, o: Quarters) {
        self.0 += o.0;
    }
}

impl Sub for Quarters {
    type Output = Quarters;
    fn sub(self, o: Quarters) -> Quarters {
        Quarters(self.0 - o.0)
    }
}

impl std::iter::Sum for Quarters {
    fn sum<I: Iterator<Item = Quarters>>(iter: I) -> Quarters {
        iter.fold(Quarters::ZERO, |a, b| a + b)
    }
}

impl Serialize for Quarters {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_fraction())
    }
}

impl<'de> Deserialize<'de> for Quarters {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Quarters::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad quarter value {s}")))
    }
}

/// Ledger keys name components and blocks by their smallest edge id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LedgerKey {
    Component(EdgeId),
    Block(EdgeId),
    Bridge(EdgeId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreditLedger {
    pub credits: BTreeMap<LedgerKey, Quarters>,
}

impl CreditLedger {
    pub fn total(&self) -> Quarters {
        self.credits.values().copied().sum()
    }

    /// Credits belonging to the component whose smallest edge id is `key`.
    pub fn component_total(&self, h: &TwoEdgeCover, c: usize) -> Quarters {
        component_credits(h, c).into_iter().map(|(_, q)| q).sum()
    }
}

/// The credit entries Def-style for component `c` of a cover.
pub fn component_credits(h: &TwoEdgeCover, c: usize) -> Vec<(LedgerKey, Quarters)> {
    let d = &h.decomposition;
    let edges = &d.component_edges[c];
    let Some(&first) = edges.iter().min() else { return Vec::new() };
    match h.classes[c] {
        ComponentClass::Cycle(i) => vec![(LedgerKey::Component(first), Quarters(i as i64))],
        ComponentClass::Large => vec![(LedgerKey::Component(first), Quarters::whole(2))],
        ComponentClass::Complex => {
            let mut out = vec![(LedgerKey::Component(first), Quarters::whole(1))];
            for b in d.component_blocks(c) {
                let bf = *d.blocks[b].iter().min().unwrap();
                out.push((LedgerKey::Block(bf), Quarters::whole(1)));
            }
            for e in d.component_bridges(c) {
                out.push((LedgerKey::Bridge(e), Quarters(1)));
            }
            out
        }
        // Not canonical: fall back to the cycle rule, capped at 2.
        ComponentClass::SmallNonCycle | ComponentClass::Triangle => {
            vec![(LedgerKey::Component(first), Quarters((edges.len() as i64).min(8)))]
        }
        ComponentClass::Isolated => Vec::new(),
    }
}

/// Ledger without the canonical precondition (used for diagnostics).
pub fn credits_unchecked(h: &TwoEdgeCover) -> CreditLedger {
    let mut ledger = CreditLedger::default();
    for c in 0..h.classes.len() {
        ledger.credits.extend(component_credits(h, c));
    }
    ledger
}

pub fn init_credits(h: &TwoEdgeCover) -> Result<CreditLedger> {
    let v = check_canonical(h);
    if !v.is_empty() {
        return Err(Error::NotCanonical(describe_violations(&v)));
    }
    Ok(credits_unchecked(h))
}

pub fn cost(h: &TwoEdgeCover, ledger: &CreditLedger) -> Quarters {
    Quarters::whole(h.len() as i64) + ledger.total()
}

/// Per complex component: `|C| >= c_b + 6 c_p + 4 c_n` and `c_p >= 2`;
/// globally `cost <= 5/4 |H|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub cost: Quarters,
    pub bound: Quarters,
    pub holds: bool,
    pub component_failures: Vec<usize>,
}

pub fn lemma_bound_check(h: &TwoEdgeCover, ledger: &CreditLedger) -> BoundCheck {
    let d = &h.decomposition;
    let mut failures = Vec::new();
    for c in 0..h.classes.len() {
        if h.classes[c] != ComponentClass::Complex {
            continue;
        }
        let blocks = d.component_blocks(c);
        let cp = blocks.iter().filter(|&&b| d.pendant[b]).count();
        let cn = blocks.len() - cp;
        let cb = d.component_bridges(c).len();
        let size = d.component_edges[c].len();
        if size < cb + 6 * cp + 4 * cn || cp < 2 {
            failures.push(c);
        }
    }
    let cost = cost(h, ledger);
    let bound = Quarters(5 * h.len() as i64);
    BoundCheck { cost, bound, holds: cost <= bound && failures.is_empty(), component_failures: failures }
}
