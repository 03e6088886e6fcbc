//! Deterministic report documents.
//!
//! A report is an ordered key/value tree. The machine rendering is the
//! stable interface: line one names the command, line two the schema
//! version, and every further line is `<indent><key>` for a subtree or
//! `<indent><key> <value>` for a leaf, with two spaces of indent per
//! level. Keys never contain spaces; repeated keys express lists. The text
//! rendering carries the same data with a `key: value` layout.

use std::fmt::Display;

#[derive(Clone, Debug)]
pub enum Node {
    Leaf(String),
    Tree(Vec<(String, Node)>),
}

impl Node {
    pub fn tree() -> Node {
        Node::Tree(Vec::new())
    }

    pub fn add(&mut self, key: impl Into<String>, node: Node) -> &mut Node {
        match self {
            Node::Tree(children) => {
                children.push((key.into(), node));
                self
            }
            Node::Leaf(_) => panic!("cannot add children to a leaf"),
        }
    }

    pub fn leaf(&mut self, key: impl Into<String>, value: impl Display) -> &mut Node {
        self.add(key, Node::Leaf(value.to_string()))
    }

    pub fn child(&mut self, key: impl Into<String>) -> &mut Node {
        match self {
            Node::Tree(children) => {
                children.push((key.into(), Node::tree()));
                match &mut children.last_mut().unwrap().1 {
                    node @ Node::Tree(_) => node,
                    Node::Leaf(_) => unreachable!(),
                }
            }
            Node::Leaf(_) => panic!("cannot add children to a leaf"),
        }
    }
}

fn render(node: &Node, depth: usize, out: &mut String, sep: &str) {
    if let Node::Tree(children) = node {
        for (key, child) in children {
            for _ in 0..depth {
                out.push_str("  ");
            }
            out.push_str(key);
            match child {
                Node::Leaf(value) => {
                    out.push_str(sep);
                    out.push_str(value);
                    out.push('\n');
                }
                Node::Tree(_) => {
                    out.push('\n');
                    render(child, depth + 1, out, sep);
                }
            }
        }
    }
}

pub fn render_machine(command: &str, node: &Node) -> String {
    let mut out = format!("lftop-report {command}\nschema 1\n");
    render(node, 0, &mut out, " ");
    out
}

pub fn render_text(command: &str, node: &Node) -> String {
    let mut out = format!("lftop {command}\n");
    render(node, 1, &mut out, ": ");
    out
}
