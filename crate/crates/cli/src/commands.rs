//! Subcommands. Each returns a deterministic report and an exit status:
//! 0 on success, 1 on a mathematical negative. Input errors are `Err`.

use std::fmt::Write as _;

use conley::conley::{conley_index, wazewski_check, ConleyError};
use conley::continuation::{check_continuation_chain, search_elementary_continuation, ContinuationStep, Direction, Fence};
use conley::dynamics::{check_isolating, is_invariant, minimal_isolating_candidate, morse_decomposition};
use conley::homology::{homology, relative_chain_complex};
use conley::index_pairs::{check_index_pair, extended_pair, standard_pair};
use conley::{CoefficientRing, Field, MultiMap, PointSet, TopPair};
use thiserror::Error;

use crate::dot::morse_dot;
use crate::problem::{Problem, ProblemError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("{0}")]
    Usage(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub status: i32,
    pub dot: Option<String>,
}

impl Outcome {
    fn new(report: String, ok: bool) -> Self {
        Outcome {
            report,
            status: if ok { 0 } else { 1 },
            dot: None,
        }
    }
}

/// `q`, `zp:<p>` or `z`.
pub fn parse_coeff(s: &str) -> Result<CoefficientRing, CliError> {
    match s.trim() {
        "q" | "Q" => Ok(CoefficientRing::Rationals),
        "z" | "Z" => Ok(CoefficientRing::Integers),
        other => {
            let p = other
                .strip_prefix("zp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| usage(format!("unknown coefficients `{other}`")))?;
            CoefficientRing::prime_field(p).map_err(|e| usage(e.to_string()))
        }
    }
}

fn field_of(ring: CoefficientRing) -> Result<Field, CliError> {
    ring.field()
        .ok_or_else(|| usage("this command needs field coefficients (q or zp:<p>)"))
}

fn get_map<'a>(p: &'a Problem, name: &str) -> Result<&'a MultiMap, CliError> {
    p.map(name).ok_or_else(|| usage(format!("unknown map `{name}`")))
}

fn get_set(p: &Problem, spec: &str) -> Result<PointSet, CliError> {
    p.resolve_set(spec).map_err(usage)
}

/// A named pair, or `(<set>,<set>)` of named or literal sets separated by `;`.
fn get_pair(p: &Problem, spec: &str) -> Result<TopPair, CliError> {
    if let Some(np) = p.pair(spec.trim()) {
        return Ok(np.pair.clone());
    }
    let inner = spec
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| usage(format!("unknown pair `{spec}`")))?;
    let (a, b) = inner
        .split_once(';')
        .or_else(|| inner.split_once(','))
        .ok_or_else(|| usage(format!("cannot read pair `{spec}`")))?;
    p.space.closed_pair(get_set(p, a)?, get_set(p, b)?).map_err(|e| usage(e.to_string()))
}

fn set_line(p: &Problem, s: &PointSet) -> String {
    match p.name_of(s) {
        Some(n) => format!("{} ({n})", p.space.fmt_set(s)),
        None => p.space.fmt_set(s),
    }
}

fn pair_line(p: &Problem, pair: &TopPair) -> String {
    format!("({}, {})", set_line(p, &pair.p1), set_line(p, &pair.p2))
}

pub fn cmd_validate(p: &Problem, map: Option<&str>) -> Result<Outcome, CliError> {
    let mut out = String::new();
    let _ = writeln!(out, "space: {} points, {} covers", p.space.len(), p.space.covers().len());
    let maps: Vec<(&str, &MultiMap)> = match map {
        Some(name) => vec![(name, get_map(p, name)?)],
        None => p.maps.iter().map(|(n, m)| (n.as_str(), m)).collect(),
    };
    let sp = &p.space;
    let mut ok = true;
    for (name, f) in maps {
        let r = f.admissibility();
        let _ = writeln!(out, "map {name}: {}", if r.is_admissible() { "admissible" } else { "not admissible" });
        match r.closed_values {
            None => out.push_str("  closed values: ok\n"),
            Some(x) => {
                let _ = writeln!(out, "  closed values: fails at {}", sp.label(x));
            }
        }
        match r.lsc {
            None => out.push_str("  lower semicontinuous: ok\n"),
            Some((a, b)) => {
                let _ = writeln!(out, "  lower semicontinuous: fails at {} <= {}", sp.label(a), sp.label(b));
            }
        }
        match &r.acyclic_values {
            None => out.push_str("  acyclic values: ok\n"),
            Some((x, w)) => {
                let _ = writeln!(
                    out,
                    "  acyclic values: fails at {} (reduced H{} has rank {}{})",
                    sp.label(*x),
                    w.degree,
                    w.rank,
                    torsion_suffix(&w.torsion)
                );
            }
        }
        let _ = writeln!(out, "  digraph edges: {}", f.digraph().len());
        ok &= r.is_admissible();
    }
    Ok(Outcome::new(out, ok))
}

fn torsion_suffix<T: std::fmt::Display>(torsion: &[T]) -> String {
    if torsion.is_empty() {
        return String::new();
    }
    let t: Vec<String> = torsion.iter().map(|t| format!("Z/{t}")).collect();
    format!(" and torsion {}", t.join(" + "))
}

fn group_text<T: std::fmt::Display>(ring: CoefficientRing, rank: usize, torsion: &[T]) -> String {
    let base = match ring {
        CoefficientRing::Integers => "Z".to_string(),
        CoefficientRing::Rationals => "Q".to_string(),
        CoefficientRing::PrimeField(p) => format!("(Z/{p})"),
    };
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push(base),
        r => parts.push(format!("{base}^{r}")),
    }
    for t in torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn cmd_homology(p: &Problem, set: Option<&str>, pair: Option<&str>, ring: CoefficientRing) -> Result<Outcome, CliError> {
    let pair = match (set, pair) {
        (Some(s), None) => TopPair::absolute(get_set(p, s)?),
        (None, Some(q)) => get_pair(p, q)?,
        _ => return Err(usage("give exactly one of --set or --pair")),
    };
    let cc = relative_chain_complex(&p.space, &pair, ring);
    let h = homology(&cc);
    let mut out = String::new();
    let _ = writeln!(out, "pair: {}", pair_line(p, &pair));
    let _ = writeln!(out, "coefficients: {ring}");
    let _ = writeln!(out, "chains: {:?}", cc.dims());
    let top = cc.dims().len().max(1);
    for n in 0..top {
        let g = h.group(n);
        let _ = writeln!(out, "H{n}: {}", group_text(ring, g.rank, &g.torsion));
    }
    Ok(Outcome::new(out, true))
}

pub fn cmd_morse(p: &Problem, map: &str, with_index: bool, ring: CoefficientRing) -> Result<Outcome, CliError> {
    let f = get_map(p, map)?;
    f.require_admissible().map_err(|e| usage(e.to_string()))?;
    let md = morse_decomposition(f).map_err(|e| usage(e.to_string()))?;
    let field = if with_index { Some(field_of(ring)?) } else { None };
    let names: Vec<String> = md
        .sets
        .iter()
        .enumerate()
        .map(|(i, s)| p.name_of(s).map_or_else(|| format!("M{i}"), String::from))
        .collect();
    let mut indices = Vec::new();
    let mut out = String::new();
    let _ = writeln!(out, "map {map}: {} Morse sets", md.len());
    for (i, s) in md.sets.iter().enumerate() {
        let _ = writeln!(out, "{} = {}", names[i], p.space.fmt_set(s));
        if let Some(field) = field {
            let idx = conley_index(f, s, None, None, field).map_err(|e| usage(e.to_string()))?;
            for line in idx.to_string().lines() {
                let _ = writeln!(out, "  {line}");
            }
            indices.push(idx.dims());
        }
    }
    for &(q, r) in &md.hasse_edges {
        let _ = writeln!(out, "{} -> {}", names[q], names[r]);
    }
    let dot = morse_dot(p, &md, &names, field.map(|_| indices.as_slice()));
    Ok(Outcome {
        report: out,
        status: 0,
        dot: Some(dot),
    })
}

fn isolating_set(p: &Problem, f: &MultiMap, s: &PointSet, iso: Option<&str>) -> Result<Result<PointSet, String>, CliError> {
    if let Some(n) = iso {
        return Ok(Ok(get_set(p, n)?));
    }
    Ok(minimal_isolating_candidate(f, s).map_err(|e| e.to_string()))
}

fn path_text(p: &Problem, pts: &[conley::PointId]) -> String {
    pts.iter().map(|&x| p.space.label(x)).collect::<Vec<_>>().join(" -> ")
}

pub fn cmd_isolate(p: &Problem, map: &str, set: &str, iso: Option<&str>) -> Result<Outcome, CliError> {
    let f = get_map(p, map)?;
    let s = get_set(p, set)?;
    let mut out = String::new();
    let _ = writeln!(out, "set: {}", set_line(p, &s));
    let _ = writeln!(out, "locally closed: {}", if p.space.is_locally_closed(&s) { "yes" } else { "no" });
    if !is_invariant(f, &s) {
        out.push_str("invariant: no\n");
        return Ok(Outcome::new(out, false));
    }
    out.push_str("invariant: yes\n");
    let n = match isolating_set(p, f, &s, iso)? {
        Ok(n) => n,
        Err(e) => return Err(usage(e)),
    };
    let _ = writeln!(out, "isolating set: {}", set_line(p, &n));
    let cert = match check_isolating(f, &n, &s) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return Ok(Outcome::new(out, false));
        }
    };
    match &cert.is1 {
        None => out.push_str("IS1: ok\n"),
        Some(path) => {
            let _ = writeln!(out, "IS1: fails, path {}", path_text(p, path.points()));
        }
    }
    match cert.is2 {
        None => out.push_str("IS2: ok\n"),
        Some(x) => {
            let _ = writeln!(out, "IS2: fails at {}", p.space.label(x));
        }
    }
    let _ = writeln!(out, "isolated: {}", if cert.is_isolating() { "yes" } else { "no" });
    Ok(Outcome::new(out, cert.is_isolating()))
}

pub fn cmd_stdpair(p: &Problem, map: &str, set: &str, iso: Option<&str>) -> Result<Outcome, CliError> {
    let f = get_map(p, map)?;
    let s = get_set(p, set)?;
    let n = isolating_set(p, f, &s, iso)?.map_err(usage)?;
    let mut out = String::new();
    let _ = writeln!(out, "set: {}", set_line(p, &s));
    let _ = writeln!(out, "isolating set: {}", set_line(p, &n));
    let pair = match standard_pair(f, &n, &s) {
        Ok(pair) => pair,
        Err(e) => {
            let _ = writeln!(out, "no standard pair: {e}");
            return Ok(Outcome::new(out, false));
        }
    };
    let cert = check_index_pair(f, &n, &s, &pair).map_err(|e| usage(e.to_string()))?;
    let ext = extended_pair(f, &n, &pair).map_err(|e| usage(e.to_string()))?;
    let _ = writeln!(out, "P1: {}", set_line(p, &pair.p1));
    let _ = writeln!(out, "P2: {}", set_line(p, &pair.p2));
    let _ = writeln!(out, "saturated: {}", if cert.saturated { "yes" } else { "no" });
    let _ = writeln!(out, "extended P1: {}", set_line(p, &ext.p1));
    let _ = writeln!(out, "extended P2: {}", set_line(p, &ext.p2));
    Ok(Outcome::new(out, true))
}

pub fn cmd_conley(p: &Problem, map: &str, set: &str, iso: Option<&str>, pair: Option<&str>, ring: CoefficientRing) -> Result<Outcome, CliError> {
    let field = field_of(ring)?;
    let f = get_map(p, map)?;
    let s = get_set(p, set)?;
    let n = isolating_set(p, f, &s, iso)?.map_err(usage)?;
    let pair = pair.map(|q| get_pair(p, q)).transpose()?;
    let mut out = String::new();
    let _ = writeln!(out, "set: {}", set_line(p, &s));
    let _ = writeln!(out, "isolating set: {}", set_line(p, &n));
    let _ = writeln!(out, "coefficients: {field}");
    match conley_index(f, &s, Some(&n), pair.as_ref(), field) {
        Ok(idx) => {
            out.push_str(&idx.to_string());
            Ok(Outcome::new(out, true))
        }
        Err(e @ (ConleyError::NotIsolated | ConleyError::NotAnIndexPair | ConleyError::Dynamics(_) | ConleyError::IndexPair(_))) => {
            let _ = writeln!(out, "no index: {e}");
            Ok(Outcome::new(out, false))
        }
        Err(e) => Err(usage(e.to_string())),
    }
}

pub fn cmd_wazewski(p: &Problem, map: &str, pair: &str, ring: CoefficientRing) -> Result<Outcome, CliError> {
    let field = field_of(ring)?;
    let f = get_map(p, map)?;
    let pair = get_pair(p, pair)?;
    let mut out = String::new();
    let _ = writeln!(out, "pair: {}", pair_line(p, &pair));
    match wazewski_check(f, &pair, field) {
        Ok(r) => {
            out.push_str("precondition: ok\n");
            out.push_str(&r.index.to_string());
            let _ = writeln!(out, "invariant part: {}", p.space.fmt_set(&r.invariant_part));
            Ok(Outcome::new(out, true))
        }
        Err(ConleyError::PreconditionFailed(m)) => {
            let _ = writeln!(out, "precondition: fails ({m})");
            Ok(Outcome::new(out, false))
        }
        Err(e) => Err(usage(e.to_string())),
    }
}

pub fn cmd_continue(p: &Problem, maps: &[&str], sets: &[&str], pairs: Option<&[&str]>, bound: usize, ring: CoefficientRing) -> Result<Outcome, CliError> {
    let field = field_of(ring)?;
    if maps.len() < 2 {
        return Err(usage("a fence needs at least two maps"));
    }
    if sets.len() != maps.len() {
        return Err(usage("give one set per map"));
    }
    if pairs.is_some_and(|ps| ps.len() != maps.len() - 1) {
        return Err(usage("give one pair per consecutive pair of maps"));
    }
    let fs: Vec<MultiMap> = maps.iter().map(|m| get_map(p, m).cloned()).collect::<Result<_, _>>()?;
    let ss: Vec<PointSet> = sets.iter().map(|s| get_set(p, s)).collect::<Result<_, _>>()?;
    let first = if fs[0].map_leq(&fs[1]).unwrap_or(false) { Direction::Leq } else { Direction::Geq };
    let fence = Fence::alternating(fs, first);
    let mut out = String::new();
    let chain: Vec<String> = maps
        .iter()
        .enumerate()
        .map(|(i, m)| if i == 0 { m.to_string() } else { format!("{} {m}", fence.directions[i - 1]) })
        .collect();
    let _ = writeln!(out, "fence: {}", chain.join(" "));
    let mut steps = Vec::new();
    for i in 0..fence.edges() {
        let (fa, fb) = (&fence.maps[i], &fence.maps[i + 1]);
        let step = match pairs {
            Some(ps) => {
                let pair = get_pair(p, ps[i])?;
                ContinuationStep {
                    s_a: ss[i].clone(),
                    n_a: pair.p1.clone(),
                    s_b: ss[i + 1].clone(),
                    n_b: pair.p1.clone(),
                    pair,
                }
            }
            None => match search_elementary_continuation(fa, fb, &ss[i], &ss[i + 1], bound) {
                Ok(step) => step,
                Err(e) => {
                    let _ = writeln!(out, "step {i}: {e}");
                    return Ok(Outcome::new(out, false));
                }
            },
        };
        let _ = writeln!(out, "step {i}: {} {} -> {} {} via {}", maps[i], set_line(p, &step.s_a), maps[i + 1], set_line(p, &step.s_b), pair_line(p, &step.pair));
        steps.push(step);
    }
    match check_continuation_chain(&fence, &steps, field) {
        Ok(idx) => {
            out.push_str("continuation: verified\n");
            out.push_str(&idx.to_string());
            Ok(Outcome::new(out, true))
        }
        Err(e) => {
            let _ = writeln!(out, "continuation: fails ({e})");
            Ok(Outcome::new(out, false))
        }
    }
}
