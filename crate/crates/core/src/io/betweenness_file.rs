use std::fmt::Write as _;

use crate::reductions::BetweennessInstance;

use super::{
    check_name, expect_header, lines, syntax, writable, ParseError, SerializeError,
    BETWEENNESS_HEADER,
};

/// Parses the betweenness grammar: `U`, `V` and `W` lines declaring the
/// elements, then `C u v u'` and `D v u` constraints (the `w` of a D-pair is
/// implicit).
pub fn parse_betweenness(text: &str) -> Result<BetweennessInstance, ParseError> {
    let mut u: Option<Vec<String>> = None;
    let mut v: Option<Vec<String>> = None;
    let mut w: Option<String> = None;
    let mut c = Vec::new();
    let mut d = Vec::new();
    for (line, tokens) in expect_header(lines(text), BETWEENNESS_HEADER)? {
        let args: Vec<String> = tokens[1..].iter().map(|s| s.to_string()).collect();
        for a in &args {
            check_name(line, a)?;
        }
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(syntax(
                    line,
                    format!("`{}` takes {k} argument(s)", tokens[0]),
                ))
            }
        };
        let once = |slot: bool| {
            if slot {
                Err(syntax(line, format!("`{}` given twice", tokens[0])))
            } else {
                Ok(())
            }
        };
        let declared = u.is_some() && v.is_some() && w.is_some();
        match tokens[0] {
            "U" => {
                once(u.is_some())?;
                u = Some(args);
            }
            "V" => {
                once(v.is_some())?;
                v = Some(args);
            }
            "W" => {
                once(w.is_some())?;
                arity(1)?;
                w = Some(args[0].clone());
            }
            "C" | "D" if !declared => {
                return Err(syntax(line, "constraints must follow the U, V and W lines"));
            }
            "C" => {
                arity(3)?;
                c.push((args[0].clone(), args[1].clone(), args[2].clone()));
            }
            "D" => {
                arity(2)?;
                d.push((args[0].clone(), args[1].clone()));
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    let (Some(u), Some(v), Some(w)) = (u, v, w) else {
        return Err(syntax(
            text.lines().count().max(1),
            "missing U, V or W line",
        ));
    };
    Ok(BetweennessInstance::from_names(u, v, w, &c, &d)?)
}

pub fn serialize_betweenness(inst: &BetweennessInstance) -> Result<String, SerializeError> {
    let mut out = String::new();
    writeln!(out, "{BETWEENNESS_HEADER}").unwrap();
    for (key, names) in [("U", inst.u()), ("V", inst.v())] {
        out.push_str(key);
        for n in names {
            out.push(' ');
            out.push_str(writable(n)?);
        }
        out.push('\n');
    }
    writeln!(out, "W {}", writable(inst.w())?).unwrap();
    for &(i, j, k) in inst.c() {
        writeln!(out, "C {} {} {}", inst.u()[i], inst.v()[j], inst.u()[k]).unwrap();
    }
    for &(i, j) in inst.d() {
        writeln!(out, "D {} {}", inst.v()[i], inst.u()[j]).unwrap();
    }
    Ok(out)
}
