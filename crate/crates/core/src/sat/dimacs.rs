//! DIMACS CNF text, with variable names as `c var` comment lines.

use super::encode::CnfInstance;
use super::SatError;

pub fn to_dimacs(cnf: &CnfInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!("c horizon {} fluents {}\n", cnf.horizon, cnf.fluents));
    for (i, name) in cnf.var_names.iter().enumerate() {
        out.push_str(&format!("c var {} {name}\n", i + 1));
    }
    out.push_str(&format!("p cnf {} {}\n", cnf.num_vars, cnf.clauses.len()));
    for c in &cnf.clauses {
        for l in c {
            out.push_str(&l.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// Reads a DIMACS file. Variable names and provenance are not recovered,
/// apart from `c var` lines written by [`to_dimacs`].
pub fn parse_dimacs(text: &str) -> Result<CnfInstance, SatError> {
    let err = |line: usize, msg: &str| SatError::Dimacs { line, message: msg.to_string() };
    let mut cnf = CnfInstance::default();
    let mut header: Option<(u32, usize)> = None;
    let mut current = Vec::new();
    let mut names = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let ln = i + 1;
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let mut it = rest.split_whitespace();
            if it.next() == Some("var") {
                if let (Some(Ok(v)), Some(name)) = (it.next().map(str::parse::<usize>), it.next()) {
                    names.push((v, name.to_string()));
                }
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let f: Vec<&str> = rest.split_whitespace().collect();
            if header.is_some() || f.len() != 3 || f[0] != "cnf" {
                return Err(err(ln, "malformed problem line"));
            }
            let v = f[1].parse().map_err(|_| err(ln, "bad variable count"))?;
            let c = f[2].parse().map_err(|_| err(ln, "bad clause count"))?;
            header = Some((v, c));
            continue;
        }
        let Some((nv, _)) = header else { return Err(err(ln, "clause before problem line")) };
        for tok in line.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| err(ln, "bad literal"))?;
            if l == 0 {
                cnf.clauses.push(std::mem::take(&mut current));
                cnf.provenance.push(format!("line {ln}"));
            } else if l.unsigned_abs() > nv {
                return Err(err(ln, "literal out of range"));
            } else {
                current.push(l);
            }
        }
    }
    let Some((nv, nc)) = header else { return Err(err(0, "missing problem line")) };
    if !current.is_empty() {
        return Err(err(0, "unterminated clause"));
    }
    if cnf.clauses.len() != nc {
        return Err(err(0, "clause count differs from problem line"));
    }
    cnf.num_vars = nv;
    cnf.var_names = (1..=nv).map(|v| format!("x{v}")).collect();
    for (v, name) in names {
        if (1..=nv as usize).contains(&v) {
            cnf.var_names[v - 1] = name;
        }
    }
    Ok(cnf)
}
