//! Plain-text format for crossed modules over finite groups.
//!
//! ```text
//! # comments start with '#'
//! xmod A3<S3
//! group M A3 = e r s
//! M e: e r s
//! M r: r s e
//! M s: s e r
//! group P S3 = ...
//! P ...
//! mu: e -> e, r -> ..., s -> ...
//! act p: e -> e, r -> s, s -> r
//! ```
//!
//! Row `M x: ...` lists `x*y` for `y` in declaration order. Every element of
//! `P` needs an `act` line (listing every element of `M`); the first
//! element declared is the identity.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use super::CrossedModule;
use crate::finite::FiniteGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, msg: msg.into() })
}

fn safe(label: &str) -> bool {
    !label.is_empty() && !label.contains(|c: char| c.is_whitespace() || c == ',' || c == ':' || c == '=' || c == '#') && !label.contains("->")
}

/// Labels used when printing: the group's own labels if they are usable tokens.
pub fn print_labels(g: &FiniteGroup, prefix: &str) -> Vec<String> {
    let own = g.labels();
    let mut uniq = own.to_vec();
    uniq.sort();
    uniq.dedup();
    if uniq.len() == own.len() && own.iter().all(|l| safe(l)) {
        own.to_vec()
    } else {
        g.elements().map(|i| format!("{}{}", prefix, i)).collect()
    }
}

fn print_group(out: &mut String, tag: &str, g: &FiniteGroup, labels: &[String]) {
    out.push_str(&format!("group {} {} = {}\n", tag, g.name, labels.join(" ")));
    for x in g.elements() {
        let row: Vec<&str> = g.elements().map(|y| labels[g.mul(x, y)].as_str()).collect();
        out.push_str(&format!("{} {}: {}\n", tag, labels[x], row.join(" ")));
    }
}

pub fn print_xmod(x: &CrossedModule) -> String {
    let lm = print_labels(&x.m, "m");
    let lp = print_labels(&x.p, "p");
    let mut out = format!("xmod {}\n", x.name);
    print_group(&mut out, "M", &x.m, &lm);
    print_group(&mut out, "P", &x.p, &lp);
    let mu: Vec<String> = x.m.elements().map(|m| format!("{} -> {}", lm[m], lp[x.mu[m]])).collect();
    out.push_str(&format!("mu: {}\n", mu.join(", ")));
    for p in x.p.elements() {
        let a: Vec<String> = x.m.elements().map(|m| format!("{} -> {}", lm[m], lm[x.act(p, m)])).collect();
        out.push_str(&format!("act {}: {}\n", lp[p], a.join(", ")));
    }
    out
}

#[derive(Default)]
struct GroupDraft {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    rows: Vec<Option<Vec<usize>>>,
    line: usize,
}

impl GroupDraft {
    fn lookup(&self, line: usize, l: &str) -> Result<usize, FormatError> {
        self.index.get(l).copied().map_or_else(|| err(line, format!("unknown element `{}`", l)), Ok)
    }

    fn finish(self, tag: &str) -> Result<FiniteGroup, FormatError> {
        if self.labels.is_empty() {
            return err(self.line, format!("group {} is missing", tag));
        }
        let mut table = Vec::new();
        for (i, r) in self.rows.into_iter().enumerate() {
            match r {
                Some(r) => table.push(r),
                None => return err(self.line, format!("no row for `{}` in {}", self.labels[i], tag)),
            }
        }
        let n = table.len();
        for (x, row) in table.iter().enumerate() {
            if row[0] != x || table[0][x] != x || row.iter().collect::<std::collections::BTreeSet<_>>().len() != n {
                return err(self.line, format!("table of {} is not a group with identity `{}`", tag, self.labels[0]));
            }
        }
        let g = FiniteGroup::from_table(&self.name, table, Some(self.labels));
        if let Some(bad) = g.check_axioms().first() {
            return err(self.line, format!("{}: {}", tag, bad));
        }
        Ok(g)
    }
}

fn pairs(line: usize, s: &str) -> Result<Vec<(String, String)>, FormatError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((a, b)) = part.split_once("->") else {
            return err(line, format!("expected `x -> y`, got `{}`", part));
        };
        out.push((a.trim().to_string(), b.trim().to_string()));
    }
    Ok(out)
}

pub fn parse_xmod(text: &str) -> Result<CrossedModule, FormatError> {
    let mut name = String::from("X");
    let mut m = GroupDraft::default();
    let mut p = GroupDraft::default();
    let mut mu_lines: Vec<(usize, String)> = Vec::new();
    let mut act_lines: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("xmod ") {
            name = rest.trim().to_string();
        } else if let Some(rest) = line.strip_prefix("group ") {
            let Some((head, elems)) = rest.split_once('=') else {
                return err(ln, "expected `group M|P [name] = elements`");
            };
            let head: Vec<&str> = head.split_whitespace().collect();
            let d = match head.first() {
                Some(&"M") => &mut m,
                Some(&"P") => &mut p,
                _ => return err(ln, "group tag must be M or P"),
            };
            if !d.labels.is_empty() {
                return err(ln, "group declared twice");
            }
            d.name = head.get(1).map_or_else(|| head[0].to_string(), |s| s.to_string());
            d.line = ln;
            for l in elems.split_whitespace() {
                if !safe(l) || d.index.insert(l.to_string(), d.labels.len()).is_some() {
                    return err(ln, format!("bad or repeated element `{}`", l));
                }
                d.labels.push(l.to_string());
            }
            d.rows = vec![None; d.labels.len()];
        } else if let Some(rest) = line.strip_prefix("mu:") {
            mu_lines.push((ln, rest.to_string()));
        } else if let Some(rest) = line.strip_prefix("act ") {
            let Some((g, body)) = rest.split_once(':') else {
                return err(ln, "expected `act p: ...`");
            };
            act_lines.push((ln, g.trim().to_string(), body.to_string()));
        } else if let Some((head, row)) = line.split_once(':') {
            let mut h = head.split_whitespace();
            let (tag, x) = (h.next(), h.next());
            let d = match tag {
                Some("M") => &mut m,
                Some("P") => &mut p,
                _ => return err(ln, format!("unrecognised line `{}`", line)),
            };
            let Some(x) = x else { return err(ln, "row needs an element") };
            let xi = d.lookup(ln, x)?;
            let row: Result<Vec<usize>, _> = row.split_whitespace().map(|l| d.lookup(ln, l)).collect();
            let row = row?;
            if row.len() != d.labels.len() {
                return err(ln, "row has the wrong length");
            }
            if d.rows[xi].replace(row).is_some() {
                return err(ln, "row given twice");
            }
        } else {
            return err(ln, format!("unrecognised line `{}`", line));
        }
    }
    let last = text.lines().count();
    let (mi, pi) = (m.index.clone(), p.index.clone());
    let look = |ix: &HashMap<String, usize>, ln: usize, l: &str| ix.get(l).copied().map_or_else(|| err(ln, format!("unknown element `{}`", l)), Ok);
    let mg = m.finish("M")?;
    let pg = p.finish("P")?;
    let mut mu = vec![usize::MAX; mg.order()];
    for (ln, body) in &mu_lines {
        for (a, b) in pairs(*ln, body)? {
            mu[look(&mi, *ln, &a)?] = look(&pi, *ln, &b)?;
        }
    }
    if let Some(k) = mu.iter().position(|&v| v == usize::MAX) {
        return err(last, format!("mu missing for `{}`", mg.label(k)));
    }
    let mut action = vec![vec![usize::MAX; mg.order()]; pg.order()];
    for (ln, g, body) in &act_lines {
        let gi = look(&pi, *ln, g)?;
        for (a, b) in pairs(*ln, body)? {
            action[gi][look(&mi, *ln, &a)?] = look(&mi, *ln, &b)?;
        }
    }
    for (g, row) in action.iter().enumerate() {
        if let Some(k) = row.iter().position(|&v| v == usize::MAX) {
            return err(last, format!("action of `{}` missing on `{}`", pg.label(g), mg.label(k)));
        }
    }
    Ok(CrossedModule::new(&name, mg, pg, mu, action))
}

/// Serialisable mirror of the text format.
#[derive(Clone, Debug, Serialize)]
pub struct GroupDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct XModDoc {
    pub name: String,
    pub m: GroupDoc,
    pub p: GroupDoc,
    pub mu: Vec<usize>,
    /// `action[p][m]`
    pub action: Vec<Vec<usize>>,
}

fn group_doc(g: &FiniteGroup, prefix: &str) -> GroupDoc {
    GroupDoc {
        name: g.name.clone(),
        elements: print_labels(g, prefix),
        table: g.elements().map(|x| g.elements().map(|y| g.mul(x, y)).collect()).collect(),
    }
}

pub fn xmod_doc(x: &CrossedModule) -> XModDoc {
    XModDoc { name: x.name.clone(), m: group_doc(&x.m, "m"), p: group_doc(&x.p, "p"), mu: x.mu.clone(), action: x.action.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xmod::catalog::catalog;

    #[test]
    fn catalog_round_trips() {
        for x in catalog(8) {
            let text = print_xmod(&x);
            let y = parse_xmod(&text).unwrap_or_else(|e| panic!("{}: {}\n{}", x.name, e, text));
            assert_eq!((&y.mu, &y.action), (&x.mu, &x.action), "{}", x.name);
            assert_eq!(y.name, x.name);
            assert!(x.m.elements().all(|a| x.m.elements().all(|b| x.m.mul(a, b) == y.m.mul(a, b))));
        }
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_xmod("group M = e a\nM e: e a\nM a: a q\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_xmod("group M = e\nM e: e\ngroup P = e\nP e: e\n").unwrap_err();
        assert!(e.msg.contains("mu missing"));
    }
}
