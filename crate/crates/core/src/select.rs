//! Naming one subgroup of a lattice from the command line.
//!
//! * `17`: lattice index;
//! * `class:3` or `class:3:1`: conjugacy class 3, member 0 (or 1);
//! * `<y>`, `<(1,2),(1,2,3)>`, `<x^2,y>`: generated by the listed elements,
//!   each an element name, a permutation in cycle notation (in permutation
//!   groups), or a `*`-separated product of those;
//! * `G`, `1`, `center`, `derived`, `alternating`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::lattice::{Lattice, SubgroupSet};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    Index(usize),
    Class { class: usize, rank: usize },
    Generators(Vec<String>),
    Named(String),
}

pub const NAMED_SELECTORS: [&str; 5] = ["G", "1", "center", "derived", "alternating"];

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Selector> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Selector("empty subgroup selector".into()));
        }
        if let Ok(i) = s.parse::<usize>() {
            return Ok(Selector::Index(i));
        }
        if let Some(rest) = s.strip_prefix("class:") {
            let mut it = rest.split(':');
            let num = |t: Option<&str>| -> Result<Option<usize>> {
                t.map(|t| t.trim().parse().map_err(|_| Error::Selector(format!("bad class selector {s:?}"))))
                    .transpose()
            };
            let class = num(it.next())?.ok_or_else(|| Error::Selector(format!("bad class selector {s:?}")))?;
            let rank = num(it.next())?.unwrap_or(0);
            if it.next().is_some() {
                return Err(Error::Selector(format!("bad class selector {s:?}")));
            }
            return Ok(Selector::Class { class, rank });
        }
        if let Some(body) = s.strip_prefix('<').and_then(|b| b.strip_suffix('>')) {
            return Ok(Selector::Generators(split_top_level(body)));
        }
        Ok(Selector::Named(s.to_string()))
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Index(i) => write!(f, "{i}"),
            Selector::Class { class, rank } => write!(f, "class:{class}:{rank}"),
            Selector::Generators(g) => write!(f, "<{}>", g.join(",")),
            Selector::Named(n) => f.write_str(n),
        }
    }
}

/// Splits on commas outside `()` and `[]`.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out.retain(|t| !t.is_empty());
    out
}

/// Largest point mentioned in the element names when every name is a
/// permutation in cycle notation.
fn perm_degree(g: &GroupTable) -> Option<usize> {
    let mut d = 0;
    for name in g.names() {
        if !name.starts_with('(') {
            return None;
        }
        for tok in name.split(|c: char| !c.is_ascii_digit()).filter(|t| !t.is_empty()) {
            d = d.max(tok.parse::<usize>().ok()?);
        }
    }
    Some(d.max(1))
}

fn near_matches(g: &GroupTable, token: &str) -> Vec<String> {
    let mut v: Vec<(usize, &String)> = g
        .names()
        .iter()
        .map(|n| (strsim::levenshtein(n, token), n))
        .filter(|&(d, n)| d <= 2 || n.starts_with(token))
        .collect();
    v.sort();
    v.into_iter().take(8).map(|(_, n)| n.clone()).collect()
}

/// Resolves one element token: an element name, a permutation, or a
/// `*`-separated product.
pub fn resolve_element(g: &GroupTable, token: &str) -> Result<Elem> {
    let token = token.trim();
    if let Some(x) = g.element_by_name(token) {
        return Ok(x);
    }
    if let Some(d) = perm_degree(g) {
        if token.starts_with('(') {
            let p = Perm::parse_word(d, token).map_err(|e| Error::Selector(e.to_string()))?;
            let name = p.to_string();
            return g
                .element_by_name(&name)
                .ok_or_else(|| Error::Selector(format!("{token} = {name} is not an element of {}", g.label())));
        }
    }
    if token.contains('*') {
        return token.split('*').try_fold(g.identity(), |acc, t| Ok(g.mul(acc, resolve_element(g, t)?)));
    }
    let near = near_matches(g, token);
    let hint = if near.is_empty() {
        let sample: Vec<&str> = g.names().iter().take(8).map(String::as_str).collect();
        format!("elements include {}", sample.join(", "))
    } else {
        format!("did you mean {}?", near.join(", "))
    };
    Err(Error::Selector(format!("no element {token:?} in {}; {hint}", g.label())))
}

fn derived_subgroup(g: &GroupTable) -> Vec<Elem> {
    let mut comms = Vec::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            comms.push(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
        }
    }
    comms.sort_unstable();
    comms.dedup();
    comms
}

impl Selector {
    /// The lattice index of the selected subgroup.
    pub fn resolve(&self, lat: &Lattice) -> Result<usize> {
        let g = lat.group();
        match self {
            Selector::Index(i) => {
                if *i < lat.len() {
                    Ok(*i)
                } else {
                    Err(Error::Selector(format!(
                        "subgroup index {i} out of range; {} has subgroups 0..{}",
                        g.label(),
                        lat.len() - 1
                    )))
                }
            }
            Selector::Class { class, rank } => {
                let classes = lat.conjugacy_classes();
                let members = classes.get(*class).ok_or_else(|| {
                    Error::Selector(format!(
                        "class {class} out of range; {} has classes 0..{}",
                        g.label(),
                        classes.len() - 1
                    ))
                })?;
                members.get(*rank).copied().ok_or_else(|| {
                    Error::Selector(format!("class {class} has {} members, no rank {rank}", members.len()))
                })
            }
            Selector::Generators(tokens) => {
                let gens: Vec<Elem> = tokens.iter().map(|t| resolve_element(g, t)).collect::<Result<_>>()?;
                lat.index_of(&SubgroupSet::generated(g, &gens))
            }
            Selector::Named(name) => match name.as_str() {
                "G" | "whole" => Ok(lat.top_index()),
                "1" | "trivial" => Ok(lat.trivial_index()),
                "center" => {
                    let z: Vec<Elem> = (0..g.order()).filter(|&a| (0..g.order()).all(|b| g.commute(a, b))).collect();
                    lat.index_of(&SubgroupSet::generated(g, &z))
                }
                "derived" => lat.index_of(&SubgroupSet::generated(g, &derived_subgroup(g))),
                "alternating" => {
                    let d = perm_degree(g).ok_or_else(|| {
                        Error::Selector(format!("\"alternating\" needs a permutation group, {} is not one", g.label()))
                    })?;
                    let even: Vec<Elem> = (0..g.order())
                        .filter(|&x| Perm::parse_cycles(d, g.name(x)).is_ok_and(|p| p.is_even()))
                        .collect();
                    lat.index_of(&SubgroupSet::generated(g, &even))
                }
                other => {
                    let mut near: Vec<&str> =
                        NAMED_SELECTORS.iter().copied().filter(|n| strsim::levenshtein(n, other) <= 3).collect();
                    if g.element_by_name(other).is_some() {
                        near.insert(0, "");
                    }
                    let hint = match near.first() {
                        Some(&"") => format!("for the subgroup generated by {other} write <{other}>"),
                        Some(_) => format!("did you mean {}?", near.join(", ")),
                        None => {
                            format!("use an index, class:C[:R], <generators>, or one of {}", NAMED_SELECTORS.join(", "))
                        }
                    };
                    Err(Error::Selector(format!("unknown subgroup selector {other:?}; {hint}")))
                }
            },
        }
    }
}

/// Parses and resolves in one step.
pub fn select(lat: &Lattice, text: &str) -> Result<usize> {
    text.parse::<Selector>()?.resolve(lat)
}
