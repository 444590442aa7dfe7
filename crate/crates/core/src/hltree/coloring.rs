use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coloring::{binomial, for_each_subset, SetColoring};
use crate::mix::Mixer;
use crate::seqtree::Node;

use super::HlError;

type ColorFn = Arc<dyn Fn(&[Node]) -> u32 + Send + Sync>;

#[derive(Clone)]
enum Rule {
    Seeded { seed: u64 },
    Table(HashMap<Vec<Node>, u32>),
    Custom(ColorFn),
}

/// A coloring `d` of `n`-element sets of same-level nodes of the full binary
/// tree, on levels `0..=depth`, with colors `0..colors`.
///
/// Seeded rule: `Mixer::new(seed)` fed the arity, then each node of the set in
/// lexicographic order (length word, then bit word), reduced mod `colors`.
#[derive(Clone)]
pub struct LevelColoring {
    arity: usize,
    colors: u32,
    depth: usize,
    rule: Rule,
}

impl fmt::Debug for LevelColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.rule {
            Rule::Seeded { seed } => format!("seeded({seed})"),
            Rule::Table(t) => format!("table({} entries)", t.len()),
            Rule::Custom(_) => "custom".to_string(),
        };
        write!(f, "LevelColoring(n={}, σ={}, D={}, {kind})", self.arity, self.colors, self.depth)
    }
}

fn check_shape(arity: usize, colors: u32, depth: usize) -> Result<(), HlError> {
    if arity == 0 || colors == 0 {
        return Err(HlError::InvalidArgument("arity and color count must be positive".into()));
    }
    if depth > crate::seqtree::DEFAULT_DEPTH_CAP {
        return Err(HlError::InvalidArgument(format!("depth {depth} above the cap")));
    }
    Ok(())
}

impl LevelColoring {
    pub fn from_seed(seed: u64, arity: usize, colors: u32, depth: usize) -> Result<Self, HlError> {
        check_shape(arity, colors, depth)?;
        Ok(LevelColoring { arity, colors, depth, rule: Rule::Seeded { seed } })
    }

    /// An explicit table, which must cover every set in the domain.
    pub fn from_table<I>(arity: usize, colors: u32, depth: usize, entries: I) -> Result<Self, HlError>
    where
        I: IntoIterator<Item = (Vec<Node>, u32)>,
    {
        check_shape(arity, colors, depth)?;
        let mut table = HashMap::new();
        for (mut set, c) in entries {
            set.sort_unstable();
            let level = set.first().map(Node::len).unwrap_or(0);
            let valid = set.len() == arity
                && level <= depth
                && set.iter().all(|x| x.len() == level)
                && set.windows(2).all(|w| w[0] != w[1]);
            if !valid {
                return Err(HlError::Table(format!("{set:?} is not a {arity}-set of one level ≤ {depth}")));
            }
            if c >= colors {
                return Err(HlError::Table(format!("color {c} for {set:?} is not below {colors}")));
            }
            if let Some(old) = table.insert(set.clone(), c) {
                if old != c {
                    return Err(HlError::Table(format!("{set:?} listed with colors {old} and {c}")));
                }
            }
        }
        let domain: u64 = (0..=depth).map(|l| binomial(1 << l, arity as u64)).sum();
        if table.len() as u64 != domain {
            let mut missing = None;
            for l in 0..=depth {
                for_each_subset(1 << l, arity, |idx| {
                    let set: Vec<Node> = idx.iter().map(|&i| Node::from_index(i as u64, l)).collect();
                    if !table.contains_key(&set) {
                        missing = Some(set);
                        return false;
                    }
                    true
                });
                if missing.is_some() {
                    break;
                }
            }
            return Err(HlError::IncompleteTable { missing: missing.unwrap_or_default() });
        }
        Ok(LevelColoring { arity, colors, depth, rule: Rule::Table(table) })
    }

    /// A coloring computed by `f` on lexicographically sorted sets.
    pub fn from_fn<F>(arity: usize, colors: u32, depth: usize, f: F) -> Result<Self, HlError>
    where
        F: Fn(&[Node]) -> u32 + Send + Sync + 'static,
    {
        check_shape(arity, colors, depth)?;
        Ok(LevelColoring { arity, colors, depth, rule: Rule::Custom(Arc::new(f)) })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Color of the set `nodes` in any order.
    pub fn color_of(&self, nodes: &[Node]) -> u32 {
        let mut set = nodes.to_vec();
        set.sort_unstable();
        self.color(&set)
    }

    /// Materialize as a table over the whole domain.
    pub fn to_table(&self) -> Vec<(Vec<Node>, u32)> {
        let mut out = Vec::new();
        for l in 0..=self.depth {
            for_each_subset(1 << l, self.arity, |idx| {
                let set: Vec<Node> = idx.iter().map(|&i| Node::from_index(i as u64, l)).collect();
                let c = self.color(&set);
                out.push((set, c));
                true
            });
        }
        out
    }

    pub fn to_spec(&self) -> ColoringSpec {
        let rule = match &self.rule {
            Rule::Seeded { seed } => RuleSpec::Seeded { seed: *seed },
            _ => RuleSpec::Table {
                entries: self.to_table().into_iter().map(|(set, color)| TableEntry { set, color }).collect(),
            },
        };
        ColoringSpec { arity: self.arity, colors: self.colors, depth: self.depth, rule }
    }

    pub fn from_spec(spec: ColoringSpec) -> Result<Self, HlError> {
        match spec.rule {
            RuleSpec::Seeded { seed } => Self::from_seed(seed, spec.arity, spec.colors, spec.depth),
            RuleSpec::Table { entries } => Self::from_table(
                spec.arity,
                spec.colors,
                spec.depth,
                entries.into_iter().map(|e| (e.set, e.color)),
            ),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, HlError> {
        let spec: ColoringSpec = serde_json::from_str(text).map_err(|e| HlError::Json(e.to_string()))?;
        Self::from_spec(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("coloring specs serialize")
    }
}

impl SetColoring<Node> for LevelColoring {
    fn arity(&self) -> usize {
        self.arity
    }

    fn colors(&self) -> u32 {
        self.colors
    }

    /// `set` must be sorted, of one level `≤ depth`, with `arity` distinct nodes.
    fn color(&self, set: &[Node]) -> u32 {
        debug_assert_eq!(set.len(), self.arity);
        debug_assert!(set.windows(2).all(|w| w[0] < w[1]));
        match &self.rule {
            Rule::Seeded { seed } => {
                let mut m = Mixer::new(*seed);
                m.word(set.len() as u64);
                for x in set {
                    m.node(x);
                }
                m.color(self.colors)
            }
            Rule::Table(t) => *t.get(set).unwrap_or_else(|| panic!("{set:?} is outside the coloring's domain")),
            Rule::Custom(f) => f(set) % self.colors,
        }
    }
}

/// Wire form of a [`LevelColoring`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringSpec {
    pub arity: usize,
    pub colors: u32,
    pub depth: usize,
    pub rule: RuleSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RuleSpec {
    Seeded { seed: u64 },
    Table { entries: Vec<TableEntry> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub set: Vec<Node>,
    pub color: u32,
}
