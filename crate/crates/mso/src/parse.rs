use origin_automata::Symbol;

use crate::ast::Formula;
use crate::MsoError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() {
                tokens.push(c.to_string());
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Sexp, MsoError> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| MsoError::Syntax("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    None => return Err(MsoError::Syntax("missing ')'".into())),
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read(tokens, pos)?),
                }
            }
        }
        ")" => Err(MsoError::Syntax("unexpected ')'".into())),
        atom => Ok(Sexp::Atom(atom.to_string())),
    }
}

fn name(s: &Sexp) -> Result<String, MsoError> {
    match s {
        Sexp::Atom(a) => Ok(a.clone()),
        Sexp::List(_) => Err(MsoError::Syntax("expected a name".into())),
    }
}

fn arity(op: &str, args: &[Sexp], n: usize) -> Result<(), MsoError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(MsoError::Arity {
            op: op.to_string(),
            expected: n,
            found: args.len(),
        })
    }
}

fn build(s: &Sexp) -> Result<Formula, MsoError> {
    let items = match s {
        Sexp::Atom(a) if a == "true" => return Ok(Formula::True),
        Sexp::Atom(a) if a == "false" => return Ok(Formula::False),
        Sexp::Atom(a) => return Err(MsoError::Syntax(format!("unexpected atom {a}"))),
        Sexp::List(items) => items,
    };
    let (head, args) = items
        .split_first()
        .ok_or_else(|| MsoError::Syntax("empty list".into()))?;
    let op = name(head)?;
    let fold = |args: &[Sexp], join: fn(Formula, Formula) -> Formula| -> Result<Formula, MsoError> {
        let mut parts = args.iter().map(build);
        let first = parts.next().ok_or_else(|| MsoError::Arity {
            op: op.clone(),
            expected: 1,
            found: 0,
        })??;
        parts.try_fold(first, |acc, p| Ok(join(acc, p?)))
    };
    let quant = |args: &[Sexp], mk: fn(String, Box<Formula>) -> Formula| -> Result<Formula, MsoError> {
        arity(&op, args, 2)?;
        Ok(mk(name(&args[0])?, Box::new(build(&args[1])?)))
    };
    let binary = |args: &[Sexp], mk: fn(String, String) -> Formula| -> Result<Formula, MsoError> {
        arity(&op, args, 2)?;
        Ok(mk(name(&args[0])?, name(&args[1])?))
    };
    match op.as_str() {
        "true" if args.is_empty() => Ok(Formula::True),
        "false" if args.is_empty() => Ok(Formula::False),
        "and" => fold(args, Formula::and),
        "or" => fold(args, Formula::or),
        "not" => {
            arity(&op, args, 1)?;
            Ok(Formula::not(build(&args[0])?))
        }
        "implies" => {
            arity(&op, args, 2)?;
            Ok(Formula::implies(build(&args[0])?, build(&args[1])?))
        }
        "exists1" => quant(args, Formula::Exists1),
        "forall1" => quant(args, Formula::Forall1),
        "exists2" => quant(args, Formula::Exists2),
        "forall2" => quant(args, Formula::Forall2),
        "label" => {
            arity(&op, args, 2)?;
            Ok(Formula::Label(Symbol::atom(name(&args[0])?), name(&args[1])?))
        }
        "in" => binary(args, Formula::In),
        "lt" => binary(args, Formula::Lt),
        "succ" => binary(args, Formula::Succ),
        "eq" => binary(args, Formula::Eq),
        "first" => {
            arity(&op, args, 1)?;
            Ok(Formula::First(name(&args[0])?))
        }
        "last" => {
            arity(&op, args, 1)?;
            Ok(Formula::Last(name(&args[0])?))
        }
        other => Err(MsoError::Syntax(format!("unknown operator {other}"))),
    }
}

/// Parses the S-expression syntax, e.g. `(exists1 x (label a x))`.
pub fn parse_body(text: &str) -> Result<Formula, MsoError> {
    let tokens = tokenize(text);
    let mut pos = 0;
    let sexp = read(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(MsoError::Syntax("trailing input".into()));
    }
    build(&sexp)
}
