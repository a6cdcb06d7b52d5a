//! Text formats: roommates instances, matchings, PVC instances, gadget and
//! literal maps, cover sets, and DIMACS CNF.
//!
//! Every writer produces the canonical form its parser accepts. `#` starts a
//! comment in all formats except DIMACS, which uses `c` lines.

use std::fmt::Write as _;

use popmatch::gadgets::{GadgetMap, GadgetName};
use popmatch::pvc::{validate_pvc, CnfFormula, CoverSet, Literal, LiteralMap, PvcInstance};
use popmatch::roommates::{validate_instance, Edge, Matching, PreferenceInstance, Vertex};

use crate::error::{CliError, CliResult};

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

fn number<T: std::str::FromStr>(file: &str, line: usize, token: &str, what: &str) -> CliResult<T> {
    token.parse().map_err(|_| CliError::parse(file, line, format!("expected {what}, found `{token}`")))
}

fn numbers<T: std::str::FromStr>(file: &str, line: usize, rest: &str, what: &str) -> CliResult<Vec<T>> {
    rest.split_whitespace().map(|t| number(file, line, t, what)).collect()
}

fn fixed<const K: usize>(file: &str, line: usize, rest: &str, what: &str) -> CliResult<[usize; K]> {
    let v: Vec<usize> = numbers(file, line, rest, what)?;
    v.try_into().map_err(|v: Vec<usize>| CliError::parse(file, line, format!("expected {K} {what}s, found {}", v.len())))
}

fn header(file: &str, lines: &mut impl Iterator<Item = (usize, impl AsRef<str>)>) -> CliResult<(usize, usize)> {
    let (line, text) = lines.next().ok_or_else(|| CliError::parse(file, 1, "missing `n m` header"))?;
    let [n, m] = fixed::<2>(file, line, text.as_ref(), "count")?;
    Ok((n, m))
}

pub fn parse_instance(file: &str, text: &str) -> CliResult<PreferenceInstance> {
    let mut lines = content_lines(text);
    let (n, m) = header(file, &mut lines)?;
    let mut prefs: Vec<Option<Vec<Vertex>>> = vec![None; n];
    for (line, body) in lines {
        let (head, rest) = body
            .split_once(':')
            .ok_or_else(|| CliError::parse(file, line, "expected `v: u1 u2 ...`"))?;
        let v: Vertex = number(file, line, head.trim(), "vertex id")?;
        if v == 0 || v > n {
            return Err(CliError::parse(file, line, format!("vertex {v} outside 1..={n}")));
        }
        if prefs[v - 1].is_some() {
            return Err(CliError::parse(file, line, format!("vertex {v} listed twice")));
        }
        prefs[v - 1] = Some(numbers(file, line, rest, "vertex id")?);
    }
    let prefs = prefs
        .into_iter()
        .enumerate()
        .map(|(k, p)| p.ok_or_else(|| CliError::parse(file, 0, format!("no preference line for vertex {}", k + 1))))
        .collect::<CliResult<Vec<_>>>()?;
    let inst = validate_instance(prefs)?;
    if inst.num_edges() != m {
        return Err(CliError::parse(file, 1, format!("header says {m} edges, lists give {}", inst.num_edges())));
    }
    Ok(inst)
}

pub fn write_instance(inst: &PreferenceInstance) -> String {
    let mut out = format!("{} {}\n", inst.num_vertices(), inst.num_edges());
    for v in inst.vertices() {
        let _ = write!(out, "{v}:");
        for u in inst.prefs(v) {
            let _ = write!(out, " {u}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_matching(file: &str, text: &str, inst: &PreferenceInstance) -> CliResult<Matching> {
    let mut edges = Vec::new();
    for (line, body) in content_lines(text) {
        let [u, v] = fixed::<2>(file, line, body, "vertex id")?;
        edges.push(Edge::new(u, v));
    }
    Ok(Matching::from_edges(inst, edges)?)
}

pub fn write_matching(m: &Matching) -> String {
    m.edges().iter().map(|e| format!("{} {}\n", e.lo(), e.hi())).collect()
}

pub fn parse_pvc(file: &str, text: &str) -> CliResult<PvcInstance> {
    let mut lines = content_lines(text);
    let (n, m) = header(file, &mut lines)?;
    let (mut edges, mut pairs, mut triples) = (Vec::new(), Vec::new(), Vec::new());
    for (line, body) in lines {
        let (tag, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match tag {
            "e" => {
                let [u, v] = fixed::<2>(file, line, rest, "vertex id")?;
                edges.push((u, v));
            }
            "P" => pairs.push(fixed::<2>(file, line, rest, "vertex id")?),
            "T" => triples.push(fixed::<3>(file, line, rest, "vertex id")?),
            other => return Err(CliError::parse(file, line, format!("unknown line tag `{other}`"))),
        }
    }
    let pvc = validate_pvc(n, edges, pairs, triples)?;
    if pvc.num_edges() != m {
        return Err(CliError::parse(file, 1, format!("header says {m} edges, file lists {}", pvc.num_edges())));
    }
    Ok(pvc)
}

pub fn write_pvc(pvc: &PvcInstance) -> String {
    let mut out = format!("{} {}\n", pvc.num_vertices(), pvc.num_edges());
    for e in pvc.edges() {
        let _ = writeln!(out, "e {} {}", e.lo(), e.hi());
    }
    for [u, v] in pvc.pairs() {
        let _ = writeln!(out, "P {u} {v}");
    }
    for [u, v, w] in pvc.triples() {
        let _ = writeln!(out, "T {u} {v} {w}");
    }
    out
}

fn parse_name(file: &str, line: usize, tokens: &[&str]) -> CliResult<GadgetName> {
    let bad = || CliError::parse(file, line, format!("unrecognized vertex name `{}`", tokens.join(" ")));
    let indices = |s: &str| -> CliResult<Vec<Vertex>> { s.split('_').map(|t| number(file, line, t, "index")).collect() };
    match tokens {
        ["u", edge, at] => {
            let ends = indices(edge.strip_prefix("e_").ok_or_else(bad)?)?;
            let [i, j] = ends[..] else { return Err(bad()) };
            let at: Vertex = number(file, line, at, "endpoint")?;
            if i == j || (at != i && at != j) {
                return Err(bad());
            }
            Ok(GadgetName::U { edge: Edge::new(i, j), at })
        }
        [name] => {
            let (kind, rest) = name.split_once('_').ok_or_else(bad)?;
            let idx = indices(rest)?;
            match (kind, &idx[..]) {
                ("a", &[i]) => Ok(GadgetName::A(i)),
                ("b", &[i]) => Ok(GadgetName::B(i)),
                ("c", &[i]) => Ok(GadgetName::C(i)),
                ("d", &[i]) => Ok(GadgetName::D(i)),
                ("f", &[i, j]) => Ok(GadgetName::F(i, j)),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// Lines `<name> <id>`, in any order; ids must cover `1..=count` exactly.
pub fn parse_gadget_map(file: &str, text: &str) -> CliResult<GadgetMap> {
    let mut entries: Vec<(Vertex, GadgetName, usize)> = Vec::new();
    for (line, body) in content_lines(text) {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let (id, name_tokens) = tokens.split_last().expect("content lines are non-empty");
        let id: Vertex = number(file, line, id, "vertex id")?;
        entries.push((id, parse_name(file, line, name_tokens)?, line));
    }
    entries.sort_by_key(|&(id, _, _)| id);
    for (k, &(id, _, line)) in entries.iter().enumerate() {
        if id != k + 1 {
            return Err(CliError::parse(file, line, format!("ids must run 1..={} without gaps; found {id}", entries.len())));
        }
    }
    Ok(GadgetMap::from_names(entries.into_iter().map(|(_, name, _)| name).collect())?)
}

pub fn write_gadget_map(map: &GadgetMap) -> String {
    map.iter().map(|(id, name)| format!("{name} {id}\n")).collect()
}

/// `lit <dimacs> <id>` for each literal vertex, then `occ <clause> <pos>
/// <dimacs> <id>` for each occurrence (clause and position 1-based).
pub fn write_literal_map(map: &LiteralMap) -> String {
    let mut out = String::new();
    for (lit, v) in map.literals() {
        let _ = writeln!(out, "lit {} {v}", lit.to_dimacs());
    }
    for (c, p, lit, v) in map.occurrences() {
        let _ = writeln!(out, "occ {} {} {} {v}", c + 1, p + 1, lit.to_dimacs());
    }
    out
}

pub fn parse_literal_map(file: &str, text: &str) -> CliResult<LiteralMap> {
    let mut lits = Vec::new();
    let mut occs: Vec<(usize, usize, Literal, Vertex, usize)> = Vec::new();
    for (line, body) in content_lines(text) {
        let (tag, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let values: Vec<i64> = numbers(file, line, rest, "integer")?;
        let lit = |x: i64| Literal::from_dimacs(x).ok_or_else(|| CliError::parse(file, line, "literal 0"));
        match (tag, &values[..]) {
            ("lit", &[l, id]) => lits.push((lit(l)?, id as Vertex, line)),
            ("occ", &[c, p, l, id]) if c >= 1 && (1..=3).contains(&p) => {
                occs.push((c as usize - 1, p as usize - 1, lit(l)?, id as Vertex, line))
            }
            _ => return Err(CliError::parse(file, line, format!("malformed literal map line `{body}`"))),
        }
    }
    let num_vars = lits.len() / 2;
    let num_clauses = occs.len() / 3;
    let mut clauses = vec![[None; 3]; num_clauses];
    for &(c, p, lit, _, line) in &occs {
        let slot = clauses
            .get_mut(c)
            .map(|cl| &mut cl[p])
            .ok_or_else(|| CliError::parse(file, line, format!("clause {} out of range", c + 1)))?;
        if slot.replace(lit).is_some() {
            return Err(CliError::parse(file, line, "occurrence listed twice"));
        }
    }
    let clauses: Vec<[Literal; 3]> = clauses
        .into_iter()
        .map(|cl| cl.map(|l| l.expect("3 * num_clauses occurrences, each slot set at most once")))
        .collect();
    let map = LiteralMap::new(num_vars, clauses);
    for &(lit, id, line) in &lits {
        if lit.var > num_vars || map.literal_vertex(lit) != id {
            return Err(CliError::parse(file, line, format!("literal {lit} cannot sit at vertex {id}")));
        }
    }
    for &(c, p, _, id, line) in &occs {
        if map.occurrence_vertex(c, p) != id {
            return Err(CliError::parse(file, line, format!("occurrence cannot sit at vertex {id}")));
        }
    }
    if lits.len() != 2 * num_vars || occs.len() != 3 * num_clauses {
        return Err(CliError::parse(file, 0, "incomplete literal map"));
    }
    Ok(map)
}

pub fn parse_cover(file: &str, text: &str) -> CliResult<CoverSet> {
    let mut cover = CoverSet::default();
    for (line, body) in content_lines(text) {
        for v in numbers::<Vertex>(file, line, body, "vertex id")? {
            if !cover.0.insert(v) {
                return Err(CliError::parse(file, line, format!("vertex {v} listed twice")));
            }
        }
    }
    Ok(cover)
}

pub fn write_cover(cover: &CoverSet) -> String {
    cover.iter().map(|v| format!("{v}\n")).collect()
}

/// DIMACS CNF with every clause of exactly three literal occurrences.
pub fn parse_dimacs(file: &str, text: &str) -> CliResult<CnfFormula> {
    let mut declared: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') {
            continue;
        }
        if body.starts_with('%') {
            break;
        }
        if let Some(rest) = body.strip_prefix('p') {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            let ["cnf", v, c] = tokens[..] else {
                return Err(CliError::parse(file, line, "expected `p cnf <vars> <clauses>`"));
            };
            if declared.is_some() {
                return Err(CliError::parse(file, line, "second problem line"));
            }
            declared = Some((number(file, line, v, "variable count")?, number(file, line, c, "clause count")?));
            continue;
        }
        let (num_vars, _) = declared.ok_or_else(|| CliError::parse(file, line, "clause before problem line"))?;
        for token in body.split_whitespace() {
            let x: i64 = number(file, line, token, "literal")?;
            match Literal::from_dimacs(x) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(lit) if lit.var <= num_vars => current.push(lit),
                Some(lit) => {
                    return Err(CliError::parse(file, line, format!("variable {} exceeds declared {num_vars}", lit.var)))
                }
            }
        }
    }
    let (num_vars, num_clauses) = declared.ok_or_else(|| CliError::parse(file, 0, "missing problem line"))?;
    if !current.is_empty() {
        return Err(CliError::parse(file, 0, "last clause is not terminated by 0"));
    }
    if clauses.len() != num_clauses {
        return Err(CliError::parse(file, 0, format!("declared {num_clauses} clauses, found {}", clauses.len())));
    }
    let clauses = clauses
        .into_iter()
        .enumerate()
        .map(|(c, cl)| {
            let found = cl.len();
            <[Literal; 3]>::try_from(cl).map_err(|_| CliError::ClauseArity { clause: c + 1, found })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(CnfFormula::new(num_vars, clauses)?)
}
