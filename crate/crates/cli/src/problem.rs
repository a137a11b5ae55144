//! The line-oriented problem file format.
//!
//! ```text
//! space:
//! point A
//! point AB
//! cover A < AB
//!
//! map F:
//! A -> A
//! AB -> A,AB
//!
//! set S = A,AB
//! pair P = (S,S)
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use conley::{FiniteSpace, MultiMap, PointSet, SpaceError, TopPair};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
}

impl ProblemError {
    fn parse(line: usize, message: impl Into<String>) -> Self {
        ProblemError::Parse { line, message: message.into() }
    }

    fn invalid(line: usize, message: impl Into<String>) -> Self {
        ProblemError::Validation { line, message: message.into() }
    }
}

#[derive(Debug, Clone)]
pub struct NamedPair {
    pub name: String,
    pub first: String,
    pub second: String,
    pub pair: TopPair,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub space: Arc<FiniteSpace>,
    pub maps: Vec<(String, MultiMap)>,
    pub sets: Vec<(String, PointSet)>,
    pub pairs: Vec<NamedPair>,
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || ",()#=<>{}".contains(c))
}

fn split_list(s: &str) -> Vec<&str> {
    let s = s.trim();
    let s = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

enum Section {
    None,
    Space,
    Map(usize),
}

struct RawMap {
    name: String,
    line: usize,
    rows: Vec<(usize, String, Vec<String>)>,
}

impl Problem {
    pub fn map(&self, name: &str) -> Option<&MultiMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn set(&self, name: &str) -> Option<&PointSet> {
        self.sets.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn pair(&self, name: &str) -> Option<&NamedPair> {
        self.pairs.iter().find(|p| p.name == name)
    }

    /// Name of the first named set equal to `s`.
    pub fn name_of(&self, s: &PointSet) -> Option<&str> {
        self.sets.iter().find(|(_, t)| t == s).map(|(n, _)| n.as_str())
    }

    /// A named set, or a literal comma-separated list of labels.
    pub fn resolve_set(&self, spec: &str) -> Result<PointSet, String> {
        if let Some(s) = self.set(spec.trim()) {
            return Ok(s.clone());
        }
        self.space.set_of(&split_list(spec)).map_err(|e| e.to_string())
    }

    pub fn parse(text: &str) -> Result<Problem, ProblemError> {
        let mut labels: Vec<(usize, String)> = Vec::new();
        let mut covers: Vec<(usize, String, String)> = Vec::new();
        let mut raw_maps: Vec<RawMap> = Vec::new();
        let mut raw_sets: Vec<(usize, String, Vec<String>)> = Vec::new();
        let mut raw_pairs: Vec<(usize, String, String, String)> = Vec::new();
        let mut section = Section::None;
        let mut seen_space = false;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if content == "space:" {
                if seen_space {
                    return Err(ProblemError::parse(line, "second space section"));
                }
                seen_space = true;
                section = Section::Space;
                continue;
            }
            if let Some(rest) = content.strip_prefix("map ") {
                let name = rest
                    .strip_suffix(':')
                    .ok_or_else(|| ProblemError::parse(line, "map header must end with `:`"))?
                    .trim();
                if !valid_token(name) {
                    return Err(ProblemError::parse(line, format!("invalid map name `{name}`")));
                }
                if raw_maps.iter().any(|m| m.name == name) {
                    return Err(ProblemError::invalid(line, format!("duplicate map `{name}`")));
                }
                raw_maps.push(RawMap {
                    name: name.to_string(),
                    line,
                    rows: Vec::new(),
                });
                section = Section::Map(raw_maps.len() - 1);
                continue;
            }
            if let Some(rest) = content.strip_prefix("set ") {
                let (name, list) = rest
                    .split_once('=')
                    .ok_or_else(|| ProblemError::parse(line, "expected `set <name> = <labels>`"))?;
                let name = name.trim();
                if !valid_token(name) {
                    return Err(ProblemError::parse(line, format!("invalid set name `{name}`")));
                }
                raw_sets.push((line, name.to_string(), split_list(list).into_iter().map(String::from).collect()));
                continue;
            }
            if let Some(rest) = content.strip_prefix("pair ") {
                let (name, body) = rest
                    .split_once('=')
                    .ok_or_else(|| ProblemError::parse(line, "expected `pair <name> = (<set>,<set>)`"))?;
                let body = body.trim();
                let inner = body
                    .strip_prefix('(')
                    .and_then(|b| b.strip_suffix(')'))
                    .ok_or_else(|| ProblemError::parse(line, "pair must be written `(<set>,<set>)`"))?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| ProblemError::parse(line, "pair needs two set names"))?;
                let (name, a, b) = (name.trim(), a.trim(), b.trim());
                for t in [name, a, b] {
                    if !valid_token(t) {
                        return Err(ProblemError::parse(line, format!("invalid name `{t}`")));
                    }
                }
                raw_pairs.push((line, name.to_string(), a.to_string(), b.to_string()));
                continue;
            }
            match section {
                Section::None => return Err(ProblemError::parse(line, format!("unexpected line `{content}`"))),
                Section::Space => {
                    if let Some(label) = content.strip_prefix("point ") {
                        let label = label.trim();
                        if !valid_token(label) {
                            return Err(ProblemError::parse(line, format!("invalid label `{label}`")));
                        }
                        labels.push((line, label.to_string()));
                    } else if let Some(rest) = content.strip_prefix("cover ") {
                        let (lo, hi) = rest
                            .split_once('<')
                            .ok_or_else(|| ProblemError::parse(line, "expected `cover <lower> < <upper>`"))?;
                        let (lo, hi) = (lo.trim(), hi.trim());
                        if !valid_token(lo) || !valid_token(hi) {
                            return Err(ProblemError::parse(line, "invalid label in cover"));
                        }
                        covers.push((line, lo.to_string(), hi.to_string()));
                    } else {
                        return Err(ProblemError::parse(line, format!("unexpected line in space section `{content}`")));
                    }
                }
                Section::Map(m) => {
                    let (x, ys) = content
                        .split_once("->")
                        .ok_or_else(|| ProblemError::parse(line, "expected `<label> -> <labels>`"))?;
                    let x = x.trim();
                    if !valid_token(x) {
                        return Err(ProblemError::parse(line, format!("invalid label `{x}`")));
                    }
                    let ys: Vec<String> = split_list(ys).into_iter().map(String::from).collect();
                    if let Some(bad) = ys.iter().find(|y| !valid_token(y)) {
                        return Err(ProblemError::parse(line, format!("invalid label `{bad}`")));
                    }
                    raw_maps[m].rows.push((line, x.to_string(), ys));
                }
            }
        }

        if !seen_space {
            return Err(ProblemError::invalid(1, "missing `space:` section"));
        }
        for (i, (line, l)) in labels.iter().enumerate() {
            if labels[..i].iter().any(|(_, k)| k == l) {
                return Err(ProblemError::invalid(*line, format!("duplicate point label `{l}`")));
            }
        }
        let label_line = |l: &str| covers.iter().find(|(_, a, b)| a == l || b == l).map_or(1, |c| c.0);
        let names: Vec<&str> = labels.iter().map(|(_, l)| l.as_str()).collect();
        let cover_pairs: Vec<(&str, &str)> = covers.iter().map(|(_, a, b)| (a.as_str(), b.as_str())).collect();
        let space = FiniteSpace::build(&names, &cover_pairs).map_err(|e| {
            let line = match &e {
                conley::SpaceError::UnknownLabel(l) | conley::SpaceError::CycleInOrder(l, _) => label_line(l),
                _ => 1,
            };
            ProblemError::invalid(line, e.to_string())
        })?;
        let space = Arc::new(space);

        let lookup = |line: usize, ls: &[String]| space.set_of(ls).map_err(|e| ProblemError::invalid(line, e.to_string()));

        let mut maps = Vec::new();
        for raw in &raw_maps {
            let mut values: Vec<Option<PointSet>> = vec![None; space.len()];
            for (line, x, ys) in &raw.rows {
                let p = space
                    .point(x)
                    .ok_or_else(|| ProblemError::invalid(*line, format!("unknown point label `{x}`")))?;
                if values[p.0].is_some() {
                    return Err(ProblemError::invalid(*line, format!("second row for `{x}` in map {}", raw.name)));
                }
                let v = lookup(*line, ys)?;
                if v.is_empty() {
                    return Err(ProblemError::invalid(*line, format!("value of `{x}` in map {} is empty", raw.name)));
                }
                values[p.0] = Some(v);
            }
            let mut full = Vec::with_capacity(space.len());
            for (i, v) in values.into_iter().enumerate() {
                match v {
                    Some(v) => full.push(v),
                    None => {
                        return Err(ProblemError::invalid(
                            raw.line,
                            format!("map {} has no value for `{}`", raw.name, space.label(conley::PointId(i))),
                        ))
                    }
                }
            }
            let m = MultiMap::self_map(space.clone(), full).map_err(|e| ProblemError::invalid(raw.line, e.to_string()))?;
            maps.push((raw.name.clone(), m));
        }

        let mut sets: Vec<(String, PointSet)> = Vec::new();
        for (line, name, ls) in &raw_sets {
            if sets.iter().any(|(n, _)| n == name) {
                return Err(ProblemError::invalid(*line, format!("duplicate set `{name}`")));
            }
            sets.push((name.clone(), lookup(*line, ls)?));
        }

        let mut pairs: Vec<NamedPair> = Vec::new();
        for (line, name, a, b) in &raw_pairs {
            if pairs.iter().any(|p| &p.name == name) {
                return Err(ProblemError::invalid(*line, format!("duplicate pair `{name}`")));
            }
            let get = |n: &str| {
                sets.iter()
                    .find(|(k, _)| k == n)
                    .map(|(_, s)| s.clone())
                    .ok_or_else(|| ProblemError::invalid(*line, format!("unknown set `{n}`")))
            };
            let pair = space.closed_pair(get(a)?, get(b)?).map_err(|e| match e {
                SpaceError::NotClosed => ProblemError::invalid(*line, format!("pair `{name}` has a set that is not closed")),
                _ => ProblemError::invalid(*line, format!("second set of pair `{name}` is not inside the first")),
            })?;
            pairs.push(NamedPair {
                name: name.clone(),
                first: a.clone(),
                second: b.clone(),
                pair,
            });
        }

        Ok(Problem { space, maps, sets, pairs })
    }

    /// Normal form: points in order, covering relations only, one row per
    /// point in every map.
    pub fn serialize(&self) -> String {
        let sp = &self.space;
        let mut out = String::from("space:\n");
        for x in sp.points() {
            let _ = writeln!(out, "point {}", sp.label(x));
        }
        for (a, b) in sp.covers() {
            let _ = writeln!(out, "cover {} < {}", sp.label(a), sp.label(b));
        }
        let list = |s: &PointSet| s.iter().map(|x| sp.label(x)).collect::<Vec<_>>().join(",");
        for (name, m) in &self.maps {
            let _ = writeln!(out, "\nmap {name}:");
            for x in sp.points() {
                let _ = writeln!(out, "{} -> {}", sp.label(x), list(m.value(x)));
            }
        }
        if !self.sets.is_empty() || !self.pairs.is_empty() {
            out.push('\n');
        }
        for (name, s) in &self.sets {
            let _ = writeln!(out, "set {name} = {}", list(s));
        }
        for p in &self.pairs {
            let _ = writeln!(out, "pair {} = ({},{})", p.name, p.first, p.second);
        }
        out
    }
}
