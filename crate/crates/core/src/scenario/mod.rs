//! Scenario files: declarations and queries over one instance.
//!
//! A scenario is parsed and fully evaluated up front, so unknown names and
//! invalid values (a distribution that does not sum to one, a non-Hermitian
//! effect) are reported with their line and column before any query runs.
//! Queries are then answered in order, one output line each.

mod eval;
mod parser;

use std::collections::HashMap;
use std::fmt;

pub use eval::{Instance, Value};
pub use parser::{Expr, Pos};

use eval::Env;
use parser::Statement;

/// Decimal places used for reals when neither the query nor the caller
/// chooses one.
pub const DEFAULT_PRECISION: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Born,
    Substitute,
    AndThen,
    Then,
    Measure,
    Orthosum,
    Multiply,
    Comprehension,
    States,
    Axioms,
}

impl QueryKind {
    pub const ALL: [QueryKind; 10] = [
        QueryKind::Born,
        QueryKind::Substitute,
        QueryKind::AndThen,
        QueryKind::Then,
        QueryKind::Measure,
        QueryKind::Orthosum,
        QueryKind::Multiply,
        QueryKind::Comprehension,
        QueryKind::States,
        QueryKind::Axioms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QueryKind::Born => "born",
            QueryKind::Substitute => "substitute",
            QueryKind::AndThen => "andthen",
            QueryKind::Then => "then",
            QueryKind::Measure => "measure",
            QueryKind::Orthosum => "orthosum",
            QueryKind::Multiply => "multiply",
            QueryKind::Comprehension => "comprehension",
            QueryKind::States => "states",
            QueryKind::Axioms => "axioms",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            QueryKind::Comprehension | QueryKind::States | QueryKind::Axioms => 1,
            _ => 2,
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Declaration {
    pub name: String,
    pub value: Value,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryTerm {
    pub kind: QueryKind,
    pub operands: Vec<Expr>,
    pub precision: Option<usize>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub instance: Instance,
    pub declarations: Vec<Declaration>,
    pub queries: Vec<QueryTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScenarioErrorKind {
    Syntax,
    UnknownName,
    Invariant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioError {
    pub kind: ScenarioErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl ScenarioError {
    fn new(kind: ScenarioErrorKind, pos: Pos, message: impl Into<String>) -> Self {
        Self {
            kind,
            pos,
            message: message.into(),
        }
    }
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.kind {
            ScenarioErrorKind::Syntax => "syntax error",
            ScenarioErrorKind::UnknownName => "unknown name",
            ScenarioErrorKind::Invariant => "invalid value",
        };
        write!(f, "{}: {label}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ScenarioError {}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    use ScenarioErrorKind::*;
    let statements =
        parser::parse_statements(text).map_err(|e| ScenarioError::new(Syntax, e.pos, e.message))?;
    let mut iter = statements.into_iter();
    let instance = match iter.next() {
        Some(Statement::Instance { name, pos }) => Instance::from_name(&name).ok_or_else(|| {
            ScenarioError::new(
                Syntax,
                pos,
                format!("unknown instance `{name}` (expected classical, stochastic or quantum)"),
            )
        })?,
        Some(Statement::Let { pos, .. } | Statement::Query { pos, .. }) => {
            return Err(ScenarioError::new(
                Syntax,
                pos,
                "the first statement must be `instance`",
            ))
        }
        None => {
            return Err(ScenarioError::new(
                Syntax,
                Pos { line: 1, col: 1 },
                "empty scenario: expected an `instance` line",
            ))
        }
    };
    let mut env = Env {
        instance,
        names: HashMap::new(),
    };
    let mut declarations = Vec::new();
    let mut queries = Vec::new();
    for stmt in iter {
        match stmt {
            Statement::Instance { pos, .. } => {
                return Err(ScenarioError::new(
                    Syntax,
                    pos,
                    "`instance` may appear only once",
                ))
            }
            Statement::Let { name, expr, pos } => {
                resolve(&env, &expr)?;
                if env.names.contains_key(&name) {
                    return Err(ScenarioError::new(
                        Invariant,
                        pos,
                        format!("`{name}` is already defined"),
                    ));
                }
                let value = env
                    .eval(&expr)
                    .map_err(|e| ScenarioError::new(Invariant, e.pos, e.message))?;
                env.names.insert(name.clone(), value.clone());
                declarations.push(Declaration { name, value, pos });
            }
            Statement::Query {
                expr,
                precision,
                pos,
            } => {
                resolve(&env, &expr)?;
                let Expr::Call {
                    name,
                    args,
                    pos: call_pos,
                } = expr
                else {
                    return Err(ScenarioError::new(
                        Syntax,
                        expr.pos(),
                        "a query must be a call such as `born(x, p)`",
                    ));
                };
                let kind = QueryKind::from_name(&name).ok_or_else(|| {
                    ScenarioError::new(Syntax, call_pos, format!("`{name}` is not a query kind"))
                })?;
                if args.len() != kind.arity() {
                    return Err(ScenarioError::new(
                        Syntax,
                        call_pos,
                        format!(
                            "`{name}` takes {} operands, got {}",
                            kind.arity(),
                            args.len()
                        ),
                    ));
                }
                queries.push(QueryTerm {
                    kind,
                    operands: args,
                    precision,
                    pos,
                });
            }
        }
    }
    Ok(Scenario {
        instance,
        declarations,
        queries,
    })
}

fn resolve(env: &Env, expr: &Expr) -> Result<(), ScenarioError> {
    let mut failure = None;
    expr.walk(&mut |e| {
        if failure.is_some() {
            return;
        }
        match e {
            Expr::Ident { name, pos } => {
                if !env.names.contains_key(name) && eval::constant(env.instance, name).is_none() {
                    failure = Some(ScenarioError::new(
                        ScenarioErrorKind::UnknownName,
                        *pos,
                        format!("`{name}`"),
                    ));
                }
            }
            Expr::Call { name, pos, .. }
            | Expr::Literal {
                ctor: name, pos, ..
            } => {
                if !eval::known_function(env.instance, name) {
                    failure = Some(ScenarioError::new(
                        ScenarioErrorKind::UnknownName,
                        *pos,
                        format!(
                            "`{name}` is not a function of the {} instance",
                            env.instance
                        ),
                    ));
                }
            }
            Expr::Number { .. } => {}
        }
    });
    failure.map_or(Ok(()), Err)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryOutcome {
    pub index: usize,
    pub kind: QueryKind,
    pub result: Result<String, String>,
}

impl fmt::Display for QueryOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.result {
            Ok(v) => write!(f, "{}: {} = {v}", self.index, self.kind),
            Err(e) => write!(f, "{}: {} = error: {e}", self.index, self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub outcomes: Vec<QueryOutcome>,
}

impl Report {
    pub fn has_errors(&self) -> bool {
        self.outcomes.iter().any(|o| o.result.is_err())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}

/// Answers every query. `precision` overrides the per-query setting.
pub fn run(scenario: &Scenario, precision: Option<usize>) -> Report {
    let env = Env {
        instance: scenario.instance,
        names: scenario
            .declarations
            .iter()
            .map(|d| (d.name.clone(), d.value.clone()))
            .collect(),
    };
    let outcomes = scenario
        .queries
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let digits = precision.or(q.precision).unwrap_or(DEFAULT_PRECISION);
            let call = Expr::Call {
                name: q.kind.name().to_string(),
                args: q.operands.clone(),
                pos: q.pos,
            };
            let result = env
                .eval(&call)
                .map(|v| v.render(digits))
                .map_err(|e| format!("{} ({})", e.message, e.pos));
            QueryOutcome {
                index: i + 1,
                kind: q.kind,
                result,
            }
        })
        .collect();
    Report { outcomes }
}

pub const POLARISATION: &str = include_str!("../../scenarios/polarisation.scn");

pub const DEMOS: [&str; 3] = ["polarisation", "stone", "axioms"];

/// Output of a named demo, or `None` for an unknown name. `precision` only
/// affects the scenario-backed polarisation demo.
pub fn demo(name: &str, precision: Option<usize>) -> Option<String> {
    match name {
        "polarisation" => {
            let scenario = parse_scenario(POLARISATION).expect("bundled scenario parses");
            Some(run(&scenario, precision).to_string())
        }
        "stone" => {
            let mut out = String::new();
            for n in 1..=crate::classical::MAX_STONE_CARRIER {
                let count = crate::classical::stone_states(n).map_or(0, |p| p.len());
                out.push_str(&format!("|S(X)| = {count} for |X| = {n}\n"));
            }
            Some(out)
        }
        "axioms" => {
            use crate::algebra::{boolean_powerset, mo_free, opposite, product};
            let mut out = String::new();
            for n in 0..=4 {
                out.push_str(&format!(
                    "MO({n}): {}\n",
                    mo_free(n).check_axioms().describe(&mo_free(n))
                ));
            }
            for n in 0..=4 {
                let p = boolean_powerset(n).expect("small powerset");
                out.push_str(&format!("P({n}): {}\n", p.check_axioms().describe(&p)));
            }
            let mixed = product(&mo_free(1), &boolean_powerset(2).expect("small powerset"));
            out.push_str(&format!(
                "MO(1) x P(2): {}\n",
                mixed.check_axioms().describe(&mixed)
            ));
            let op = opposite(&mo_free(2));
            out.push_str(&format!("MO(2)^op: {}\n", op.check_axioms().describe(&op)));
            Some(out)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polarisation_demo_lines() {
        let out = demo("polarisation", None).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines,
            [
                "1: born = 0.000000000",
                "2: born = 0.500000000",
                "3: born = 0.250000000",
                "4: born = 0.750000000",
            ]
        );
    }

    #[test]
    fn stone_and_axiom_demos() {
        assert!(demo("stone", None)
            .unwrap()
            .contains("|S(X)| = 3 for |X| = 3"));
        assert!(demo("axioms", None).unwrap().contains("MO(3): pass"));
        assert!(demo("nope", None).is_none());
    }

    #[test]
    fn unknown_name_has_position() {
        let err = parse_scenario("instance quantum\nquery born(ket0, proj(ketSW))").unwrap_err();
        assert_eq!(err.kind, ScenarioErrorKind::UnknownName);
        assert_eq!(err.pos, Pos { line: 2, col: 23 });
    }

    #[test]
    fn invalid_distribution_reports_the_sum() {
        let err = parse_scenario("instance stochastic\nlet X = set(2)\nlet m = dist(X, 0.5, 0.6)")
            .unwrap_err();
        assert_eq!(err.kind, ScenarioErrorKind::Invariant);
        assert_eq!(err.pos.line, 3);
        assert!(err.message.contains("1.1"), "{}", err.message);
    }

    #[test]
    fn query_shape_is_checked_at_parse_time() {
        let err = parse_scenario("instance classical\nquery born(1)").unwrap_err();
        assert_eq!(err.kind, ScenarioErrorKind::Syntax);
        let err = parse_scenario("instance classical\nlet X = set(2)\nquery truth(X)").unwrap_err();
        assert!(err.message.contains("not a query kind"));
        assert!(parse_scenario("let x = 1").is_err());
    }

    #[test]
    fn runtime_errors_stay_on_their_line() {
        let s = parse_scenario(
            "instance classical\nlet X = set(3)\nlet Y = set(2)\nlet U = subset(X, 0)\nlet V = subset(Y, 1)\n\
             query orthosum(U, V)\nquery orthosum(U, complement(U))\nquery measure(U, 0)",
        )
        .unwrap();
        let report = run(&s, None);
        assert!(report.has_errors());
        assert!(report.outcomes[0].result.is_err());
        assert_eq!(report.outcomes[1].result.as_deref(), Ok("{0,1,2}"));
        assert_eq!(report.outcomes[2].result.as_deref(), Ok("left(0)"));
    }

    #[test]
    fn stochastic_queries() {
        let s = parse_scenario(
            "instance stochastic\nlet X = set(2)\nlet m = dist(X, 1/4, 3/4)\nlet p = fuzzy(X, 1, 0.5)\n\
             query born(m, p) precision 3\nquery measure(p, m)\nquery orthosum(p, p)\nquery comprehension(p)",
        )
        .unwrap();
        let out = run(&s, Some(4)).to_string();
        assert_eq!(
            out,
            "1: born = 0.6250\n2: measure = (0.2500, 0.3750, 0.0000, 0.3750)\n3: orthosum = undefined\n4: comprehension = {0}\n"
        );
    }
}
