//! Newick reading and writing for trivalent leaf-labelled trees.

use super::{PhyloTree, TreeError};
use crate::algebra::rational::{self, Rational};
use num_traits::{One, Signed};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

/// A parsed subtree before validation.
struct RawNode {
    leaf: Option<usize>,
    children: Vec<(RawNode, Rational)>,
    pos: usize,
}

impl RawNode {
    fn leaves(&self, out: &mut Vec<usize>) {
        if let Some(l) = self.leaf {
            out.push(l);
        }
        for (c, _) in &self.children {
            c.leaves(out);
        }
    }
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> TreeError {
        TreeError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), TreeError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn token(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && !b"(),:;".contains(&self.src[self.pos])
            && !self.src[self.pos].is_ascii_whitespace()
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn length(&mut self) -> Result<Rational, TreeError> {
        if self.peek() != Some(b':') {
            return Ok(Rational::one());
        }
        self.pos += 1;
        let at = self.pos;
        let tok = self.token();
        let len = rational::parse(tok).map_err(|_| TreeError::Parse {
            pos: at,
            msg: format!("bad branch length '{tok}'"),
        })?;
        if !len.is_positive() {
            return Err(TreeError::Parse {
                pos: at,
                msg: format!("branch length {tok} is not positive"),
            });
        }
        Ok(len)
    }

    fn subtree(&mut self) -> Result<RawNode, TreeError> {
        let pos = self.pos;
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut children = Vec::new();
            loop {
                let child = self.subtree()?;
                let len = self.length()?;
                children.push((child, len));
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
            // internal labels are accepted and ignored
            self.token();
            Ok(RawNode {
                leaf: None,
                children,
                pos,
            })
        } else {
            let at = self.pos;
            let tok = self.token();
            if tok.is_empty() {
                return Err(self.err("expected a leaf label or '('"));
            }
            let label: usize = tok.parse().map_err(|_| TreeError::Parse {
                pos: at,
                msg: format!("leaf label '{tok}' is not a positive integer"),
            })?;
            if label == 0 {
                return Err(TreeError::Parse {
                    pos: at,
                    msg: "leaf labels start at 1".into(),
                });
            }
            Ok(RawNode {
                leaf: Some(label),
                children: Vec::new(),
                pos: at,
            })
        }
    }
}

/// Parses a Newick string with integer leaf labels `1..n` and optional
/// positive branch lengths (integers, fractions `a/b` or decimals; default 1).
/// A bifurcating root is suppressed by merging its two edges.
pub fn parse_newick(s: &str) -> Result<PhyloTree, TreeError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let root = p.subtree()?;
    // a length on the root is meaningless; accept and drop it
    p.length()?;
    p.expect(b';')?;
    if p.peek().is_some() {
        return Err(p.err("trailing characters after ';'"));
    }

    let mut labels = Vec::new();
    root.leaves(&mut labels);
    let n = labels.len();
    if n < 3 {
        return Err(TreeError::TooFewLeaves(n));
    }
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    for (k, &l) in sorted.iter().enumerate() {
        if l != k + 1 {
            return Err(TreeError::Labels(format!(
                "leaf labels must be exactly 1..{n}, got {sorted:?}"
            )));
        }
    }

    let mut tree = PhyloTree::empty(n);
    let root_id = build(&root, &mut tree, true)?;
    let root_deg = root.children.len();
    match root_deg {
        3 => {}
        2 => tree.suppress_degree_two(root_id),
        _ => {
            return Err(TreeError::Valence {
                vertex: vertex_name(&root),
                degree: root_deg,
            })
        }
    }
    tree.compact();
    Ok(tree)
}

fn vertex_name(node: &RawNode) -> String {
    let mut leaves = Vec::new();
    node.leaves(&mut leaves);
    leaves.sort_unstable();
    format!("internal vertex at offset {} above leaves {:?}", node.pos, leaves)
}

fn build(node: &RawNode, tree: &mut PhyloTree, is_root: bool) -> Result<usize, TreeError> {
    if let Some(l) = node.leaf {
        return Ok(l - 1);
    }
    if !is_root && node.children.len() != 2 {
        return Err(TreeError::Valence {
            vertex: vertex_name(node),
            degree: node.children.len() + 1,
        });
    }
    let id = tree.add_vertex();
    for (child, len) in &node.children {
        let c = build(child, tree, false)?;
        tree.add_edge(id, c, len.clone());
    }
    Ok(id)
}

/// Canonical Newick: rooted at the internal neighbour of leaf `n`, children
/// ordered by smallest leaf label, every branch length written out.
pub fn to_newick(t: &PhyloTree) -> String {
    fn write(t: &PhyloTree, v: usize, parent: usize, out: &mut String) {
        if t.is_leaf(v) {
            out.push_str(&(v + 1).to_string());
            return;
        }
        let mut kids: Vec<(usize, Rational)> = t
            .neighbors(v)
            .filter(|(u, _)| *u != parent)
            .map(|(u, l)| (u, l.clone()))
            .collect();
        kids.sort_by_key(|(u, _)| t.min_leaf_below(*u, v));
        out.push('(');
        for (k, (u, l)) in kids.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            write(t, *u, v, out);
            out.push(':');
            out.push_str(&rational::to_string(l));
        }
        out.push(')');
    }
    let n = t.n();
    let (root, _) = t.neighbors(n - 1).next().expect("leaf has a neighbour");
    let mut out = String::new();
    write(t, root, usize::MAX, &mut out);
    out.push(';');
    out
}
