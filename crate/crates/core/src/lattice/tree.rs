use std::fmt;

use num_bigint::BigInt;

use super::{guard, LatticePath, PathStats, Step, DEFAULT_ENUM_LIMIT};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf,
    Internal(Vec<Node>),
}

impl Node {
    fn internal_count(&self) -> usize {
        match self {
            Node::Leaf => 0,
            Node::Internal(children) => {
                1 + children.iter().map(Node::internal_count).sum::<usize>()
            }
        }
    }

    fn leaf_count(&self) -> usize {
        match self {
            Node::Leaf => 1,
            Node::Internal(children) => children.iter().map(Node::leaf_count).sum(),
        }
    }

    fn write(&self, out: &mut String) {
        match self {
            Node::Leaf => out.push('•'),
            Node::Internal(children) => {
                out.push('(');
                for c in children {
                    c.write(out);
                }
                out.push(')');
            }
        }
    }
}

/// Rooted ordered tree in which every internal node has exactly `p` children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PAryTree {
    p: u32,
    root: Node,
}

impl PAryTree {
    /// Checks that every internal node has exactly `p` children.
    pub fn new(p: u32, root: Node) -> Result<Self> {
        fn arity_ok(node: &Node, p: usize) -> bool {
            match node {
                Node::Leaf => true,
                Node::Internal(c) => c.len() == p && c.iter().all(|x| arity_ok(x, p)),
            }
        }
        if p < 2 {
            return Err(Error::InvalidArity(p));
        }
        if !arity_ok(&root, p as usize) {
            return Err(Error::InvalidPath(format!("tree is not {p}-ary")));
        }
        Ok(PAryTree { p, root })
    }

    pub fn leaf(p: u32) -> Result<Self> {
        PAryTree::new(p, Node::Leaf)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn internal_count(&self) -> usize {
        self.root.internal_count()
    }

    pub fn leaf_count(&self) -> usize {
        self.root.leaf_count()
    }

    /// Parses the nested-parentheses form, e.g. `((•••)••)`. A leaf may also
    /// be written as `.`.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        let mut stack: Vec<Vec<Node>> = vec![Vec::new()];
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '•' | '.' => stack.last_mut().unwrap().push(Node::Leaf),
                '(' => stack.push(Vec::new()),
                ')' => {
                    let children = stack.pop().unwrap();
                    match stack.last_mut() {
                        Some(parent) => parent.push(Node::Internal(children)),
                        None => return Err(Error::InvalidPath(s.to_string())),
                    }
                }
                _ => return Err(Error::InvalidPath(s.to_string())),
            }
        }
        let mut top = stack.pop().unwrap();
        if !stack.is_empty() || top.len() != 1 {
            return Err(Error::InvalidPath(s.to_string()));
        }
        PAryTree::new(p, top.pop().unwrap())
    }

    /// Depth-first postorder encoding: every leaf but the first visited
    /// becomes an up step, every internal node a down step.
    pub fn to_path(&self) -> LatticePath {
        fn walk(node: &Node, first: &mut bool, out: &mut Vec<Step>) {
            match node {
                Node::Leaf => {
                    if *first {
                        *first = false;
                    } else {
                        out.push(Step::Up);
                    }
                }
                Node::Internal(children) => {
                    for c in children {
                        walk(c, first, out);
                    }
                    out.push(Step::Down);
                }
            }
        }
        let mut steps = Vec::with_capacity(self.p as usize * self.internal_count());
        walk(&self.root, &mut true, &mut steps);
        LatticePath::new(self.p, steps).expect("arity checked at construction")
    }

    /// Inverse of [`PAryTree::to_path`], rebuilding the tree with a stack.
    pub fn from_path(path: &LatticePath) -> Result<Self> {
        if !path.is_valid() {
            return Err(Error::InvalidPath(path.to_string()));
        }
        let p = path.p() as usize;
        let mut stack = vec![Node::Leaf];
        for &s in path.steps() {
            match s {
                Step::Up => stack.push(Node::Leaf),
                Step::Down => {
                    let children = stack.split_off(stack.len() - p);
                    stack.push(Node::Internal(children));
                }
            }
        }
        debug_assert_eq!(stack.len(), 1);
        Ok(PAryTree {
            p: path.p(),
            root: stack.pop().unwrap(),
        })
    }

    /// Number of internal nodes on the chain root, last child, last child, ...
    pub fn last_right_string_len(&self) -> usize {
        let mut len = 0;
        let mut node = &self.root;
        while let Node::Internal(children) = node {
            len += 1;
            node = children.last().unwrap();
        }
        len
    }

    /// Classifies each internal node off the last right string by the number
    /// of leaves met before it in postorder (not counting the left-most
    /// leaf), taken modulo `p - 1`.
    pub fn stats(&self) -> PathStats {
        fn walk(node: &Node, leaves: &mut i64, residues: &mut Vec<usize>, classes: i64) {
            match node {
                Node::Leaf => *leaves += 1,
                Node::Internal(children) => {
                    for c in children {
                        walk(c, leaves, residues, classes);
                    }
                    residues.push(leaves.rem_euclid(classes) as usize);
                }
            }
        }
        let classes = (self.p - 1) as usize;
        let mut residues = Vec::with_capacity(self.internal_count());
        walk(&self.root, &mut -1, &mut residues, classes as i64);
        let last_run = self.last_right_string_len();
        let mut ks = vec![0u64; classes];
        for &r in &residues[..residues.len() - last_run] {
            ks[r] += 1;
        }
        PathStats {
            n: residues.len() as u64,
            last_run: last_run as u64,
            ks,
        }
    }

    /// Swaps the first two children of every node on the last right string.
    /// Ternary trees only.
    pub fn last_right_string_involution(&self) -> Result<Self> {
        if self.p != 3 {
            return Err(Error::ArityMismatch {
                expected: 3,
                got: self.p,
            });
        }
        let mut root = self.root.clone();
        let mut node = &mut root;
        while let Node::Internal(children) = node {
            children.swap(0, 1);
            node = children.last_mut().unwrap();
        }
        Ok(PAryTree { p: self.p, root })
    }
}

impl fmt::Display for PAryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.root.write(&mut s);
        f.write_str(&s)
    }
}

pub fn enumerate_trees(p: u32, n: u64) -> Result<Vec<PAryTree>> {
    enumerate_trees_with_limit(p, n, DEFAULT_ENUM_LIMIT)
}

/// All `p`-ary trees with `n` internal nodes, built by distributing `n - 1`
/// internal nodes over the root's `p` subtrees.
pub fn enumerate_trees_with_limit(p: u32, n: u64, limit: u64) -> Result<Vec<PAryTree>> {
    guard(p, n, limit)?;
    let mut memo: Vec<Vec<Node>> = vec![vec![Node::Leaf]];
    for size in 1..=n as usize {
        let mut out = Vec::new();
        let mut chosen: Vec<&Node> = Vec::with_capacity(p as usize);
        fill(&memo, p as usize, size - 1, &mut chosen, &mut out);
        memo.push(out);
    }
    Ok(memo
        .pop()
        .unwrap()
        .into_iter()
        .map(|root| PAryTree { p, root })
        .collect())
}

fn fill<'a>(
    memo: &'a [Vec<Node>],
    p: usize,
    remaining: usize,
    chosen: &mut Vec<&'a Node>,
    out: &mut Vec<Node>,
) {
    if chosen.len() == p - 1 {
        for last in &memo[remaining] {
            let mut children: Vec<Node> = chosen.iter().map(|&c| c.clone()).collect();
            children.push(last.clone());
            out.push(Node::Internal(children));
        }
        return;
    }
    for size in 0..=remaining {
        for sub in &memo[size] {
            chosen.push(sub);
            fill(memo, p, remaining - size, chosen, out);
            chosen.pop();
        }
    }
}

/// Number of trees per value of [`PAryTree::stats`]'s `ks`.
pub fn tree_distribution(trees: &[PAryTree]) -> std::collections::BTreeMap<Vec<u64>, BigInt> {
    let mut counts: std::collections::BTreeMap<Vec<u64>, BigInt> = Default::default();
    for t in trees {
        *counts.entry(t.stats().ks).or_default() += 1;
    }
    counts
}
