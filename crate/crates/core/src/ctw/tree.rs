//! Depth-bounded context tree with weighted (CTW) probabilities.
//!
//! Contexts are passed most-recent-first: `context[0]` is the symbol just
//! before the one being predicted, and selects the root's child. A node at
//! depth `l` therefore stands for the suffix `(x_{i-1}, ..., x_{i-l})`.
//!
//! Every node keeps its symbol counts, `log2 P_e` (the KT block probability of
//! the symbols it has seen) and `log2 P_w`, with
//!
//! ```text
//! P_w = P_e                                   at depth D
//! P_w = 1/2 P_e + 1/2 prod_children P_w       above depth D
//! ```
//!
//! Children are created on first visit; an absent child has seen nothing and
//! contributes a factor of 1.

use std::fmt::Write as _;

use super::kt::{kt_factor, kt_weights};
use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::logprob::{log2_add, odds_to_weight, LogProb};
use crate::pmf::Pmf;

const NO_CHILD: u32 = u32::MAX;

/// One context of the tree.
#[derive(Debug, Clone)]
pub struct ContextTreeNode {
    counts: Box<[u64]>,
    total: u64,
    log_pe: f64,
    log_pw: f64,
    children: Box<[u32]>,
}

impl ContextTreeNode {
    fn empty(m: usize) -> Self {
        Self {
            counts: vec![0; m].into_boxed_slice(),
            total: 0,
            log_pe: 0.0,
            log_pw: 0.0,
            children: vec![NO_CHILD; m].into_boxed_slice(),
        }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of symbols emitted in this context.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn log_pe(&self) -> LogProb {
        LogProb::new(self.log_pe.min(0.0)).expect("log P_e is a log-probability")
    }

    pub fn log_pw(&self) -> LogProb {
        LogProb::new(self.log_pw.min(0.0)).expect("log P_w is a log-probability")
    }

    /// Raw `log2 P_e`.
    pub fn log_pe_bits(&self) -> f64 {
        self.log_pe
    }

    /// Raw `log2 P_w`.
    pub fn log_pw_bits(&self) -> f64 {
        self.log_pw
    }
}

/// The universal sequential probability assignment over one alphabet.
#[derive(Debug, Clone)]
pub struct ContextTree {
    alphabet: Alphabet,
    depth: usize,
    nodes: Vec<ContextTreeNode>,
    symbols_seen: u64,
    path: Vec<usize>,
}

impl ContextTree {
    pub fn new(alphabet: Alphabet, depth: usize) -> Self {
        Self {
            alphabet,
            depth,
            nodes: vec![ContextTreeNode::empty(alphabet.size())],
            symbols_seen: 0,
            path: Vec::with_capacity(depth + 1),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn symbols_seen(&self) -> u64 {
        self.symbols_seen
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> &ContextTreeNode {
        &self.nodes[0]
    }

    pub fn child(&self, node: &ContextTreeNode, symbol: Symbol) -> Option<&ContextTreeNode> {
        match node.children.get(symbol) {
            Some(&id) if id != NO_CHILD => Some(&self.nodes[id as usize]),
            _ => None,
        }
    }

    /// Node reached by following `context` (most recent first) from the root.
    pub fn find(&self, context: &[Symbol]) -> Option<&ContextTreeNode> {
        context
            .iter()
            .try_fold(self.root(), |node, &s| self.child(node, s))
    }

    /// `log2 Q(x^n)`, the weighted probability at the root.
    pub fn assignment_logprob(&self) -> LogProb {
        self.root().log_pw()
    }

    fn check_context(&self, context: &[Symbol]) -> Result<()> {
        if context.len() < self.depth {
            return Err(Error::ContextTooShort {
                got: context.len(),
                depth: self.depth,
            });
        }
        context[..self.depth]
            .iter()
            .try_for_each(|&s| self.alphabet.check(s))
    }

    fn children_log_pw(&self, id: usize) -> f64 {
        self.nodes[id]
            .children
            .iter()
            .filter(|&&c| c != NO_CHILD)
            .map(|&c| self.nodes[c as usize].log_pw)
            .sum()
    }

    /// Feeds `symbol` observed after `context` and returns `log2 Q(symbol | past)`,
    /// the amount by which the root's weighted log-probability changed.
    pub fn update(&mut self, symbol: Symbol, context: &[Symbol]) -> Result<f64> {
        self.alphabet.check(symbol)?;
        self.check_context(context)?;
        let m = self.alphabet.size();
        let before = self.nodes[0].log_pw;

        let mut path = std::mem::take(&mut self.path);
        path.clear();
        let mut id = 0usize;
        path.push(id);
        for &c in &context[..self.depth] {
            let next = self.nodes[id].children[c];
            id = if next == NO_CHILD {
                let new_id = self.nodes.len();
                self.nodes.push(ContextTreeNode::empty(m));
                self.nodes[id].children[c] = new_id as u32;
                new_id
            } else {
                next as usize
            };
            path.push(id);
        }

        // leaf first, so each parent sees its updated child
        for (level, &id) in path.iter().enumerate().rev() {
            let below = if level < self.depth {
                Some(self.children_log_pw(id))
            } else {
                None
            };
            let node = &mut self.nodes[id];
            node.log_pe += kt_factor(node.counts[symbol], node.total, m).log2();
            node.counts[symbol] += 1;
            node.total += 1;
            node.log_pw = match below {
                None => node.log_pe,
                Some(children) => log2_add(node.log_pe, children) - 1.0,
            };
        }
        self.path = path;
        self.symbols_seen += 1;
        Ok(self.nodes[0].log_pw - before)
    }

    /// `Q(. | past)` for the next symbol after `context`.
    ///
    /// Mixes the KT predictions along the context path from the deepest node up,
    /// weighting node `s` by `beta / (1 + beta)` with
    /// `log2 beta = log2 P_e(s) - sum_children log2 P_w`.
    pub fn predict(&self, context: &[Symbol]) -> Result<Pmf> {
        self.check_context(context)?;
        Ok(Pmf::from_normalized(self.alphabet, self.predict_weights(context)))
    }

    pub(crate) fn predict_weights(&self, context: &[Symbol]) -> Vec<f64> {
        let m = self.alphabet.size();
        let mut ids = Vec::with_capacity(self.depth + 1);
        let mut node = Some(0usize);
        while let Some(id) = node {
            ids.push(id);
            if ids.len() > self.depth {
                break;
            }
            let c = self.nodes[id].children[context[ids.len() - 1]];
            node = (c != NO_CHILD).then_some(c as usize);
        }

        let mut pmf = if ids.len() == self.depth + 1 {
            kt_weights(&self.nodes[*ids.last().unwrap()].counts)
        } else {
            // deepest existing node is internal; everything below it is empty
            vec![1.0 / m as f64; m]
        };
        let internal = ids.len().min(self.depth);
        for &id in ids[..internal].iter().rev() {
            let node = &self.nodes[id];
            let w = odds_to_weight(node.log_pe - self.children_log_pw(id));
            let kt = kt_weights(&node.counts);
            for (p, k) in pmf.iter_mut().zip(kt) {
                *p = w * k + (1.0 - w) * *p;
            }
        }
        pmf
    }

    /// Deterministic text listing of every node: path (most recent symbol
    /// first, `-` for the root), counts, `log2 P_e`, `log2 P_w`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let sep = if self.alphabet.size() > 10 { "." } else { "" };
        let mut stack: Vec<(usize, Vec<Symbol>)> = vec![(0, Vec::new())];
        while let Some((id, path)) = stack.pop() {
            let node = &self.nodes[id];
            let label = if path.is_empty() {
                "-".to_string()
            } else {
                path.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(sep)
            };
            let counts = node
                .counts
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(
                out,
                "{label}\t{counts}\t{:.9}\t{:.9}",
                node.log_pe, node.log_pw
            );
            for (s, &c) in node.children.iter().enumerate().rev() {
                if c != NO_CHILD {
                    let mut p = path.clone();
                    p.push(s);
                    stack.push((c as usize, p));
                }
            }
        }
        out
    }
}
