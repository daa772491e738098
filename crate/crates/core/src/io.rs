//! Text formats for graph instances (`.vck`), set systems (`.sck`),
//! hitting-set systems (`.hsk`) and tree decompositions (`.td`).
//!
//! All formats are line based with space-separated fields. Lines starting
//! with `c` are comments and may appear anywhere; blank lines are ignored.
//! Ids are 1-indexed in files and 0-indexed in memory.
//!
//! ```text
//! p vck <n> <m>                         p sck <n> <m>
//! k <s> <d> [<budget>]                  k <s|-> <d|->
//! v <id> <weight> <value>     (n)       t <id> <weight> <value> <cnt> <e>...  (m)
//! e <u> <v>                   (m)
//!
//! p hsk <n> <m>                         s td <bags> <width+1> <n>
//! k <s|-> <d|->                         b <bag> <v>...   (one per bag)
//! u <id> <weight> <value>     (n)       <b1> <b2>        (bags - 1 edges)
//! t <id> <cnt> <e>...         (m)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Result, VckError};
use crate::graph::VertexGraph;
use crate::instance::{KnapsackBound, Variant, VckInstance};
use crate::setsys::{HittingSetSystem, SetSystem, WeightedSet};
use crate::treewidth::TreeDecomposition;

/// Kinds of file understood by [`detect_format`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Vck,
    Sck,
    Hsk,
    Td,
}

struct Line<'a> {
    number: usize,
    fields: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, msg: impl Into<String>) -> VckError {
        VckError::parse(self.number, msg)
    }

    fn tag(&self) -> &str {
        self.fields[0]
    }

    fn expect_tag(&self, tag: &str) -> Result<()> {
        if self.tag() == tag {
            Ok(())
        } else {
            Err(self.err(format!("expected a '{tag}' line, found '{}'", self.tag())))
        }
    }

    fn expect_len(&self, lo: usize, hi: usize) -> Result<()> {
        let n = self.fields.len();
        if n < lo || n > hi {
            let want = if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") };
            return Err(self.err(format!("expected {want} fields, found {n}")));
        }
        Ok(())
    }

    fn num<T: FromStr>(&self, i: usize, what: &str) -> Result<T> {
        let tok = self
            .fields
            .get(i)
            .ok_or_else(|| self.err(format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| self.err(format!("{what} '{tok}' is not a non-negative integer")))
    }

    /// Optional number written as `-` when absent.
    fn opt_num(&self, i: usize, what: &str) -> Result<Option<u64>> {
        if self.fields.get(i) == Some(&"-") {
            Ok(None)
        } else {
            self.num(i, what).map(Some)
        }
    }

    /// A 1-indexed id in `1..=n`, returned 0-indexed.
    fn id(&self, i: usize, n: usize, what: &str) -> Result<usize> {
        let raw: usize = self.num(i, what)?;
        if raw == 0 || raw > n {
            return Err(self.err(format!("{what} {raw} outside 1..={n}")));
        }
        Ok(raw - 1)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let fields: Vec<&str> = raw.split_ascii_whitespace().collect();
        if fields.is_empty() || fields[0] == "c" {
            None
        } else {
            Some(Line {
                number: i + 1,
                fields,
            })
        }
    })
}

fn next_line<'a>(lines: &mut impl Iterator<Item = Line<'a>>, what: &str) -> Result<Line<'a>> {
    lines
        .next()
        .ok_or_else(|| VckError::structural(format!("file ended before the {what}")))
}

fn problem_line<'a>(
    lines: &mut impl Iterator<Item = Line<'a>>,
    kind: &str,
) -> Result<(usize, usize)> {
    let p = next_line(lines, "problem line")?;
    p.expect_tag("p")?;
    p.expect_len(4, 4)?;
    if p.fields[1] != kind {
        return Err(p.err(format!("expected problem kind '{kind}', found '{}'", p.fields[1])));
    }
    Ok((p.num(2, "count")?, p.num(3, "count")?))
}

fn no_trailing<'a>(mut lines: impl Iterator<Item = Line<'a>>, what: &str) -> Result<()> {
    match lines.next() {
        Some(extra) => Err(VckError::structural(format!(
            "line {}: more {what} than the problem line declares",
            extra.number
        ))),
        None => Ok(()),
    }
}

/// Identifies a file by its problem line.
pub fn detect_format(text: &str) -> Result<FileKind> {
    let first = content_lines(text)
        .next()
        .ok_or_else(|| VckError::structural("file has no problem line"))?;
    match (first.tag(), first.fields.get(1).copied()) {
        ("p", Some("vck")) => Ok(FileKind::Vck),
        ("p", Some("sck")) => Ok(FileKind::Sck),
        ("p", Some("hsk")) => Ok(FileKind::Hsk),
        ("s", Some("td")) => Ok(FileKind::Td),
        _ => Err(first.err("unrecognized problem line")),
    }
}

/// Reads a graph instance. The variant is `Budget(k)` when the `k` line
/// carries a budget and `Any` otherwise; callers pick other variants with
/// [`VckInstance::with_variant`].
pub fn parse_vck_file(text: &str) -> Result<VckInstance> {
    let mut lines = content_lines(text);
    let (n, m) = problem_line(&mut lines, "vck")?;

    let k = next_line(&mut lines, "'k' line")?;
    k.expect_tag("k")?;
    k.expect_len(3, 4)?;
    let bound = KnapsackBound::new(k.num(1, "capacity")?, k.num(2, "target")?);
    let budget = if k.fields.len() == 4 {
        Some(k.num::<usize>(3, "budget")?)
    } else {
        None
    };

    let mut weight = Vec::with_capacity(n);
    let mut value = Vec::with_capacity(n);
    for expected in 0..n {
        let v = next_line(&mut lines, "vertex lines")?;
        if v.tag() == "e" {
            return Err(VckError::structural(format!(
                "line {}: found {expected} vertex lines, problem line declares {n}",
                v.number
            )));
        }
        v.expect_tag("v")?;
        v.expect_len(4, 4)?;
        let id = v.id(1, n, "vertex id")?;
        if id != expected {
            return Err(VckError::structural(format!(
                "line {}: vertex {} listed where vertex {} was expected",
                v.number,
                id + 1,
                expected + 1
            )));
        }
        weight.push(v.num(2, "weight")?);
        value.push(v.num(3, "value")?);
    }

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for found in 0..=m {
        let Some(e) = lines.next() else {
            if found < m {
                return Err(VckError::structural(format!(
                    "found {found} edge lines, problem line declares {m}"
                )));
            }
            break;
        };
        if e.tag() == "v" {
            return Err(VckError::structural(format!(
                "line {}: more vertex lines than the problem line declares",
                e.number
            )));
        }
        if found == m {
            return Err(VckError::structural(format!(
                "line {}: more edge lines than the problem line declares",
                e.number
            )));
        }
        e.expect_tag("e")?;
        e.expect_len(3, 3)?;
        let (u, v) = (e.id(1, n, "endpoint")?, e.id(2, n, "endpoint")?);
        if u >= v {
            return Err(e.err("edge endpoints must satisfy u < v"));
        }
        if !seen.insert((u, v)) {
            return Err(VckError::structural(format!(
                "line {}: duplicate edge ({}, {})",
                e.number,
                u + 1,
                v + 1
            )));
        }
        edges.push((u, v));
    }

    let graph = VertexGraph::new(n, &edges, weight, value)?;
    let variant = budget.map_or(Variant::Any, Variant::Budget);
    VckInstance::new(graph, bound, variant)
}

/// Writes a graph instance. Only a `Budget` variant is recorded in the file.
pub fn serialize_vck(inst: &VckInstance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    writeln!(out, "p vck {} {}", g.n(), g.edge_count()).unwrap();
    match inst.variant {
        Variant::Budget(k) => writeln!(out, "k {} {} {k}", inst.bound.s, inst.bound.d),
        _ => writeln!(out, "k {} {}", inst.bound.s, inst.bound.d),
    }
    .unwrap();
    for u in 0..g.n() {
        writeln!(out, "v {} {} {}", u + 1, g.weight(u), g.value(u)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// A set system with the optional bounds from its `k` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SckFile {
    pub system: SetSystem,
    pub s: Option<u64>,
    pub d: Option<u64>,
}

/// A hitting-set system with the optional bounds from its `k` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HskFile {
    pub system: HittingSetSystem,
    pub s: Option<u64>,
    pub d: Option<u64>,
}

fn bounds_line<'a>(lines: &mut impl Iterator<Item = Line<'a>>) -> Result<(Option<u64>, Option<u64>)> {
    let k = next_line(lines, "'k' line")?;
    k.expect_tag("k")?;
    k.expect_len(3, 3)?;
    Ok((k.opt_num(1, "capacity")?, k.opt_num(2, "target")?))
}

fn fmt_opt(x: Option<u64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

/// Reads `cnt` ids starting at field `start`; the line must end there.
fn id_list(line: &Line, start: usize, n: usize) -> Result<Vec<usize>> {
    let cnt: usize = line.num(start, "element count")?;
    if line.fields.len() != start + 1 + cnt {
        return Err(line.err(format!(
            "element count {cnt} does not match {} listed elements",
            line.fields.len() - start - 1
        )));
    }
    let ids: Vec<usize> = (0..cnt)
        .map(|i| line.id(start + 1 + i, n, "element"))
        .collect::<Result<_>>()?;
    let unique: HashSet<usize> = ids.iter().copied().collect();
    if unique.len() != ids.len() {
        return Err(VckError::structural(format!(
            "line {}: repeated element in a set",
            line.number
        )));
    }
    Ok(ids)
}

fn set_id(line: &Line, expected: usize, m: usize) -> Result<()> {
    let id = line.id(1, m, "set id")?;
    if id != expected {
        return Err(VckError::structural(format!(
            "line {}: set {} listed where set {} was expected",
            line.number,
            id + 1,
            expected + 1
        )));
    }
    Ok(())
}

fn counted<'a>(
    lines: &mut impl Iterator<Item = Line<'a>>,
    count: usize,
    what: &str,
) -> Result<Vec<Line<'a>>> {
    (0..count)
        .map(|i| {
            lines.next().ok_or_else(|| {
                VckError::structural(format!(
                    "found {i} {what}, problem line declares {count}"
                ))
            })
        })
        .collect()
}

pub fn parse_sck_file(text: &str) -> Result<SckFile> {
    let mut lines = content_lines(text);
    let (n, m) = problem_line(&mut lines, "sck")?;
    let (s, d) = bounds_line(&mut lines)?;
    let mut sets = Vec::with_capacity(m);
    for (i, t) in counted(&mut lines, m, "set lines")?.iter().enumerate() {
        t.expect_tag("t")?;
        if t.fields.len() < 5 {
            return Err(t.err("set line needs id, weight, value and count"));
        }
        set_id(t, i, m)?;
        sets.push(WeightedSet {
            weight: t.num(2, "weight")?,
            value: t.num(3, "value")?,
            elements: id_list(t, 4, n)?,
        });
    }
    no_trailing(lines, "set lines")?;
    Ok(SckFile {
        system: SetSystem::new(n, sets)?,
        s,
        d,
    })
}

pub fn serialize_sck(file: &SckFile) -> String {
    let sys = &file.system;
    let mut out = String::new();
    writeln!(out, "p sck {} {}", sys.n_elements(), sys.m()).unwrap();
    writeln!(out, "k {} {}", fmt_opt(file.s), fmt_opt(file.d)).unwrap();
    for (i, set) in sys.sets().iter().enumerate() {
        write!(out, "t {} {} {} {}", i + 1, set.weight, set.value, set.elements.len()).unwrap();
        for e in &set.elements {
            write!(out, " {}", e + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_hsk_file(text: &str) -> Result<HskFile> {
    let mut lines = content_lines(text);
    let (n, m) = problem_line(&mut lines, "hsk")?;
    let (s, d) = bounds_line(&mut lines)?;
    let mut weight = Vec::with_capacity(n);
    let mut value = Vec::with_capacity(n);
    for (i, u) in counted(&mut lines, n, "element lines")?.iter().enumerate() {
        u.expect_tag("u")?;
        u.expect_len(4, 4)?;
        let id = u.id(1, n, "element id")?;
        if id != i {
            return Err(VckError::structural(format!(
                "line {}: element {} listed where element {} was expected",
                u.number,
                id + 1,
                i + 1
            )));
        }
        weight.push(u.num(2, "weight")?);
        value.push(u.num(3, "value")?);
    }
    let mut sets = Vec::with_capacity(m);
    for (i, t) in counted(&mut lines, m, "set lines")?.iter().enumerate() {
        t.expect_tag("t")?;
        if t.fields.len() < 3 {
            return Err(t.err("set line needs id and count"));
        }
        set_id(t, i, m)?;
        sets.push(id_list(t, 2, n)?);
    }
    no_trailing(lines, "set lines")?;
    Ok(HskFile {
        system: HittingSetSystem::new(weight, value, sets)?,
        s,
        d,
    })
}

pub fn serialize_hsk(file: &HskFile) -> String {
    let h = &file.system;
    let mut out = String::new();
    writeln!(out, "p hsk {} {}", h.n_elements(), h.m()).unwrap();
    writeln!(out, "k {} {}", fmt_opt(file.s), fmt_opt(file.d)).unwrap();
    for j in 0..h.n_elements() {
        writeln!(out, "u {} {} {}", j + 1, h.element_weights()[j], h.element_values()[j]).unwrap();
    }
    for (i, set) in h.sets().iter().enumerate() {
        write!(out, "t {} {}", i + 1, set.len()).unwrap();
        for e in set {
            write!(out, " {}", e + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Reads a decomposition; returns it with the vertex count from the header.
/// Bags must be listed before tree edges.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut lines = content_lines(text);
    let header = next_line(&mut lines, "'s td' header")?;
    header.expect_tag("s")?;
    header.expect_len(5, 5)?;
    if header.fields[1] != "td" {
        return Err(header.err("expected 's td' header"));
    }
    let num_bags: usize = header.num(2, "bag count")?;
    let declared_size: usize = header.num(3, "bag size")?;
    let n: usize = header.num(4, "vertex count")?;

    let mut bags: Vec<Option<Vec<usize>>> = vec![None; num_bags];
    let mut tree_edges = Vec::new();
    for line in lines {
        if line.tag() == "b" {
            if !tree_edges.is_empty() {
                return Err(line.err("bag lines must precede tree edges"));
            }
            let id = line.id(1, num_bags, "bag id")?;
            let members = (2..line.fields.len())
                .map(|i| line.id(i, n, "vertex"))
                .collect::<Result<Vec<_>>>()?;
            if bags[id].replace(members).is_some() {
                return Err(VckError::structural(format!(
                    "line {}: bag {} listed twice",
                    line.number,
                    id + 1
                )));
            }
        } else {
            line.expect_len(2, 2)?;
            tree_edges.push((line.id(0, num_bags, "bag id")?, line.id(1, num_bags, "bag id")?));
        }
    }
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| VckError::structural(format!("bag {} is never listed", i + 1))))
        .collect::<Result<_>>()?;
    let td = TreeDecomposition::new(bags, tree_edges);
    let actual = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    if actual != declared_size {
        return Err(VckError::structural(format!(
            "header declares largest bag size {declared_size}, bags have {actual}"
        )));
    }
    Ok((td, n))
}

pub fn serialize_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let size = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "s td {} {} {}", td.node_count(), size, n).unwrap();
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}
