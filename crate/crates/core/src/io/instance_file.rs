use std::fmt::Write as _;

use crate::instance::{
    validate_instance, Behavior, Instance, RawBuyer, RawInstance, RawPreference, Rule,
};
use crate::money::Money;
use crate::preference::Preference;

use super::{
    check_name, expect_header, lines, syntax, writable, ParseError, SerializeError, INSTANCE_HEADER,
};

/// Parses the instance grammar into name form without semantic checks.
pub fn parse_raw_instance(text: &str) -> Result<RawInstance, ParseError> {
    let mut raw = RawInstance::default();
    // line of each buyer's `buyer` keyword, for "no preference" errors
    let mut buyer_lines = Vec::new();
    for (line, tokens) in expect_header(lines(text), INSTANCE_HEADER)? {
        let args = &tokens[1..];
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
        let money = |s: &str| s.parse::<Money>().map_err(|e| syntax(line, e.to_string()));
        let current = |raw: &mut RawInstance| -> Result<usize, ParseError> {
            raw.buyers
                .len()
                .checked_sub(1)
                .ok_or_else(|| syntax(line, format!("`{}` outside a buyer block", tokens[0])))
        };
        match tokens[0] {
            "product" => {
                arity(2)?;
                if !raw.buyers.is_empty() {
                    return Err(syntax(line, "products must precede buyers"));
                }
                check_name(line, args[0])?;
                raw.products.push((args[0].to_string(), money(args[1])?));
            }
            "buyer" => {
                arity(3)?;
                check_name(line, args[0])?;
                let rule: Rule = args[1].parse().map_err(|e: String| syntax(line, e))?;
                let direction = args[2].parse().map_err(|e: String| syntax(line, e))?;
                raw.buyers.push(RawBuyer {
                    name: args[0].to_string(),
                    rule,
                    direction,
                    preference: RawPreference::Beats(Vec::new()),
                    threshold: None,
                });
                buyer_lines.push((line, false));
            }
            "rank" => {
                let b = current(&mut raw)?;
                if buyer_lines[b].1 {
                    return Err(syntax(line, "buyer already has a preference block"));
                }
                if args.is_empty() {
                    return Err(syntax(line, "empty ranking"));
                }
                buyer_lines[b].1 = true;
                raw.buyers[b].preference =
                    RawPreference::Rank(args.iter().map(|s| s.to_string()).collect());
            }
            "beats" => {
                arity(2)?;
                let b = current(&mut raw)?;
                match &mut raw.buyers[b].preference {
                    RawPreference::Beats(pairs) => {
                        pairs.push((args[0].to_string(), args[1].to_string()));
                    }
                    RawPreference::Rank(_) => {
                        return Err(syntax(line, "buyer already has a rank preference"))
                    }
                }
                buyer_lines[b].1 = true;
            }
            "threshold" => {
                arity(1)?;
                let b = current(&mut raw)?;
                if raw.buyers[b].threshold.is_some() {
                    return Err(syntax(line, "threshold given twice"));
                }
                raw.buyers[b].threshold = Some(args[0].to_string());
            }
            "target" => {
                arity(1)?;
                if raw.target.is_some() {
                    return Err(syntax(line, "target given twice"));
                }
                raw.target = Some(money(args[0])?);
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    // with one product a tournament has no pairs, so its `beats` block is empty
    let vacuous = raw.products.len() == 1;
    if let Some(&(line, _)) = buyer_lines.iter().find(|(_, has)| !has && !vacuous) {
        return Err(syntax(line, "buyer has no preference block"));
    }
    Ok(raw)
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    Ok(validate_instance(&parse_raw_instance(text)?)?)
}

/// Canonical text form: header, products in id order, buyers in order
/// (linear preferences as `rank`, tournaments as `beats` lines in pair
/// order), then the target.
pub fn serialize_instance(inst: &Instance) -> Result<String, SerializeError> {
    let cat = inst.catalog();
    let name = |p| writable(cat.name(p));
    let mut out = String::new();
    writeln!(out, "{INSTANCE_HEADER}").unwrap();
    for p in cat.ids() {
        writeln!(out, "product {} {}", name(p)?, cat.profit(p)).unwrap();
    }
    for b in inst.buyers() {
        writeln!(
            out,
            "buyer {} {} {}",
            writable(b.name())?,
            b.rule().token(),
            b.direction().token()
        )
        .unwrap();
        let pref = match b.behavior() {
            Behavior::Rational(lin) => {
                write_rank(&mut out, lin.ranking(), &name)?;
                None
            }
            Behavior::Satisficing { preference, .. } | Behavior::Successive(preference) => {
                Some(preference)
            }
        };
        match pref {
            Some(Preference::Linear(lin)) => write_rank(&mut out, lin.ranking(), &name)?,
            Some(Preference::Tournament(t)) => {
                for (w, l) in t.pairs() {
                    writeln!(out, "beats {} {}", name(w)?, name(l)?).unwrap();
                }
            }
            None => {}
        }
        if let Some(t) = b.threshold() {
            writeln!(out, "threshold {}", name(t)?).unwrap();
        }
    }
    if let Some(r) = inst.target() {
        writeln!(out, "target {r}").unwrap();
    }
    Ok(out)
}

fn write_rank<'a>(
    out: &mut String,
    ranking: &[crate::catalog::ProductId],
    name: &impl Fn(crate::catalog::ProductId) -> Result<&'a str, SerializeError>,
) -> Result<(), SerializeError> {
    out.push_str("rank");
    for &p in ranking {
        out.push(' ');
        out.push_str(name(p)?);
    }
    out.push('\n');
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Violation;

    #[test]
    fn two_line_file() {
        let inst = parse_instance("shelflist v1\nproduct a 1\n").unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.m(), 0);
    }

    #[test]
    fn profit_is_fixed_point() {
        let inst = parse_instance("shelflist v1\nproduct a 31\n").unwrap();
        assert_eq!(inst.catalog().profits()[0].micros(), 31_000_000);
        let err = parse_instance("shelflist v1\nproduct a 0.1234567\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn incomplete_beats_block_names_missing_pair() {
        let text = "shelflist v1
product a 1
product b 1
product c 1
product d 1
buyer x sc L
beats a b
beats a c
beats a d
beats b c
beats b d
";
        let err = parse_instance(text).unwrap_err();
        let ParseError::Invalid(v) = &err else {
            panic!("{err}")
        };
        assert_eq!(
            v.violations,
            vec![Violation::IncompleteTournament(
                "x".into(),
                "c".into(),
                "d".into()
            )]
        );
        assert!(err.to_string().contains("pair {c,d} unoriented"));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("shelflist v2\n", 1),
            ("shelflist v1\n\n# note\nproduct a\n", 4),
            ("shelflist v1\nproduct a 1\nrank a\n", 3),
            ("shelflist v1\nproduct a 1\nbuyer x sc L\nproduct b 1\n", 4),
            ("shelflist v1\nproduct a 1\nproduct b 1\nbuyer x sc L\n", 4),
            ("shelflist v1\nproduct a 1\nbuyer x sc X\n", 3),
            ("shelflist v1\nproduct a,b 1\n", 2),
            (
                "shelflist v1\nproduct a 1\nbuyer x rc L\nrank a\nbeats a a\n",
                5,
            ),
            ("shelflist v1\nproduct a 1\nfoo\n", 3),
        ];
        for (text, want) in cases {
            match parse_instance(text) {
                Err(ParseError::Syntax { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn round_trip_is_canonical() {
        let text = "shelflist v1  # header
product x 5
product y 3.25
product z 0
buyer a sat R
threshold y
rank y x z
buyer b sc L
beats y x
beats x z
beats z y
buyer c rc L
rank z y x
target 8.5
";
        let inst = parse_instance(text).unwrap();
        let canon = serialize_instance(&inst).unwrap();
        assert_eq!(parse_instance(&canon).unwrap(), inst);
        assert_eq!(
            serialize_instance(&parse_instance(&canon).unwrap()).unwrap(),
            canon
        );
        assert!(
            canon.contains("beats y x\nbeats x z\nbeats z y\n"),
            "{canon}"
        );
        assert!(canon.ends_with("target 8.5\n"));
    }
}
