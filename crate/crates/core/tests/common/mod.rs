//! Seeded fixture generators and reference oracles shared by the oracle tests
//! and the acceptance target.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use apievolve_core::syntax::{NodeId, NodeKind, SourceUnit};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

// ---- constant chains -------------------------------------------------------

#[derive(Clone)]
pub enum IntExpr {
    Lit(i32),
    Var(String),
    Bin(&'static str, Box<IntExpr>, Box<IntExpr>),
}

impl IntExpr {
    pub fn java(&self) -> String {
        match self {
            IntExpr::Lit(v) => v.to_string(),
            IntExpr::Var(n) => n.clone(),
            IntExpr::Bin(op, l, r) => format!("({} {op} {})", l.java(), r.java()),
        }
    }

    pub fn eval(&self, env: &HashMap<String, i32>) -> i32 {
        match self {
            IntExpr::Lit(v) => *v,
            IntExpr::Var(n) => env[n],
            IntExpr::Bin(op, l, r) => int_op(op, l.eval(env), r.eval(env)),
        }
    }
}

pub fn int_op(op: &str, a: i32, b: i32) -> i32 {
    match op {
        "+" => a.wrapping_add(b),
        "-" => a.wrapping_sub(b),
        "*" => a.wrapping_mul(b),
        _ => panic!("operator {op}"),
    }
}

/// Constant-fold a resolved expression; names left over are an error.
pub fn fold(e: &apievolve_core::syntax::Expr) -> Result<i32, String> {
    use apievolve_core::syntax::Expr;
    match e {
        Expr::Literal(t) => t.parse().map_err(|_| format!("literal {t}")),
        Expr::Paren(inner) => fold(inner),
        Expr::Binary { op, lhs, rhs } => Ok(int_op(op, fold(lhs)?, fold(rhs)?)),
        other => Err(format!("unfolded {}", other.to_java())),
    }
}

fn gen_int_expr(rng: &mut StdRng, vars: &[String], depth: usize) -> IntExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        if !vars.is_empty() && rng.gen_bool(0.6) {
            IntExpr::Var(vars[rng.gen_range(0..vars.len())].clone())
        } else {
            IntExpr::Lit(rng.gen_range(0..100))
        }
    } else {
        let op = ["+", "-", "*"][rng.gen_range(0..3)];
        IntExpr::Bin(op, Box::new(gen_int_expr(rng, vars, depth - 1)), Box::new(gen_int_expr(rng, vars, depth - 1)))
    }
}

pub struct ChainProgram {
    pub source: String,
    /// Value of the `sink.consume(..)` argument under straight-line execution.
    pub expected: i32,
}

/// Fields and locals assigned from constants and each other, read by one call.
pub fn chain_program(seed: u64) -> ChainProgram {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut env = HashMap::new();
    let mut visible: Vec<String> = Vec::new();
    let mut fields = String::new();
    for i in 0..rng.gen_range(0..4) {
        let name = format!("field{i}");
        let depth = rng.gen_range(0..3);
        let e = gen_int_expr(&mut rng, &visible, depth);
        env.insert(name.clone(), e.eval(&env));
        fields.push_str(&format!("    private int {name} = {};\n", e.java()));
        visible.push(name);
    }
    let mut body = String::new();
    let mut locals: Vec<String> = Vec::new();
    for i in 0..rng.gen_range(1..6) {
        let reassign = !locals.is_empty() && rng.gen_bool(0.3);
        let depth = rng.gen_range(0..=5);
        let e = gen_int_expr(&mut rng, &visible, depth);
        let value = e.eval(&env);
        if reassign {
            let pick = rng.gen_range(0..locals.len());
            let name = locals[pick].clone();
            body.push_str(&format!("        {name} = {};\n", e.java()));
            env.insert(name, value);
        } else {
            let name = format!("local{i}");
            body.push_str(&format!("        int {name} = {};\n", e.java()));
            env.insert(name.clone(), value);
            visible.push(name.clone());
            locals.push(name);
        }
    }
    let last = gen_int_expr(&mut rng, &visible, 2);
    let expected = last.eval(&env);
    body.push_str(&format!("        sink.consume({});\n", last.java()));
    ChainProgram { source: format!("class Chain {{\n{fields}\n    void run(Sink sink) {{\n{body}    }}\n}}\n"), expected }
}

// ---- pure invocation sites ------------------------------------------------

pub struct Site {
    pub source: String,
    pub method: String,
    pub arity: usize,
}

fn pure_operand(rng: &mut StdRng) -> String {
    match rng.gen_range(0..7) {
        0 => rng.gen_range(0..1000).to_string(),
        1 => format!("\"s{}\"", rng.gen_range(0..10)),
        2 => ["a", "b", "count"][rng.gen_range(0..3)].to_string(),
        3 => "this.count".to_string(),
        4 => "cfg.size".to_string(),
        5 => "AudioManager.STREAM_MUSIC".to_string(),
        _ => ["true", "null", "2.5f", "'c'"][rng.gen_range(0..4)].to_string(),
    }
}

fn pure_arg(rng: &mut StdRng) -> String {
    if rng.gen_bool(0.25) {
        let op = ["+", "-", "*", "/"][rng.gen_range(0..4)];
        format!("{} {op} {}", pure_operand(rng), pure_operand(rng))
    } else {
        pure_operand(rng)
    }
}

/// A method whose body holds one invocation with a pure receiver and pure
/// arguments, in a randomly chosen statement context.
pub fn pure_site(seed: u64) -> Site {
    let mut rng = StdRng::seed_from_u64(seed);
    let method = ["setValue", "put", "update", "getCurrentHour", "fromHtml"][rng.gen_range(0..5)].to_string();
    let arity = rng.gen_range(0..4);
    let args: Vec<String> = (0..arity).map(|_| pure_arg(&mut rng)).collect();
    let receiver = ["picker", "this.picker", "cfg.picker", "Html", "holder.inner.picker", ""][rng.gen_range(0..6)];
    let call =
        if receiver.is_empty() { format!("{method}({})", args.join(", ")) } else { format!("{receiver}.{method}({})", args.join(", ")) };
    let statement = match rng.gen_range(0..7) {
        0 => format!("{call};"),
        1 => format!("int result = {call};"),
        2 => format!("count = {call};"),
        3 => format!("return {call};"),
        4 => format!("log({call});"),
        5 => format!("int total = {call} + 1;"),
        _ => format!("if (a > b) {{\n            {call};\n        }}"),
    };
    let before = ["int a = 1;", "log(\"start\");", "b = a + 2;"];
    let mut body = String::new();
    for _ in 0..rng.gen_range(0..3) {
        body.push_str(&format!("        {}\n", before[rng.gen_range(0..before.len())]));
    }
    body.push_str(&format!("        {statement}\n"));
    if !statement.starts_with("return") && rng.gen_bool(0.5) {
        body.push_str("        log(\"done\");\n");
    }
    let source = format!(
        "class Site {{\n    private int count;\n    private TimePicker picker;\n    private Config cfg;\n\n    int run(int a, int b, Holder holder) {{\n{body}    }}\n}}\n"
    );
    Site { source, method, arity }
}

// ---- side effects -----------------------------------------------------------

/// Names whose invocation counts as an observable effect.
pub fn is_effect(name: &str) -> bool {
    name.starts_with("tick") || name == "nextPicker"
}

/// Effect counts along every path through `method`'s body, taking each `if`
/// both ways.
pub fn effect_counts(unit: &SourceUnit, method: NodeId) -> BTreeSet<usize> {
    let body = unit.method_body(method).expect("method has a body");
    paths(unit, unit.children(body))
}

fn paths(unit: &SourceUnit, stmts: &[NodeId]) -> BTreeSet<usize> {
    let mut acc = BTreeSet::from([0usize]);
    for &s in stmts {
        let here = stmt_paths(unit, s);
        acc = acc.iter().flat_map(|a| here.iter().map(move |h| a + h)).collect();
    }
    acc
}

fn stmt_paths(unit: &SourceUnit, s: NodeId) -> BTreeSet<usize> {
    match unit.kind(s) {
        NodeKind::Block => paths(unit, unit.children(s)),
        NodeKind::IfStmt => {
            let (cond, then, els) = unit.if_parts(s);
            let c = count_effects(unit, cond);
            let mut out: BTreeSet<usize> = stmt_paths(unit, then).into_iter().map(|n| n + c).collect();
            match els {
                Some(e) => out.extend(stmt_paths(unit, e).into_iter().map(|n| n + c)),
                None => {
                    out.insert(c);
                }
            }
            out
        }
        _ => BTreeSet::from([count_effects(unit, s)]),
    }
}

fn count_effects(unit: &SourceUnit, id: NodeId) -> usize {
    std::iter::once(id)
        .chain(unit.descendants(id))
        .filter(|n| matches!(unit.kind(*n), NodeKind::MethodInvocation { name, .. } if is_effect(&name.text)))
        .count()
}

pub const HOUR_MAPPING: &str = "deprecated: android.widget.TimePicker#setCurrentHour(java.lang.Integer)\nreplacement: android.widget.TimePicker#setHour(int)\nguard-symbol: android.os.Build.VERSION_CODES.M\n";

pub const HOUR_EXAMPLE: &str = "class Clock {
    void set(TimePicker picker, int hour) {
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            picker.setHour(hour);
        } else {
            picker.setCurrentHour(hour);
        }
    }
}
";

pub const MINUTE_MAPPING: &str = "deprecated: android.widget.TimePicker#getCurrentMinute()\nreplacement: android.widget.TimePicker#getMinute()\nguard-symbol: android.os.Build.VERSION_CODES.M\n";

pub const MINUTE_EXAMPLE: &str = "class Clock {
    void show(TimePicker timePicker) {
        int minute;
        if (android.os.Build.VERSION.SDK_INT >= android.os.Build.VERSION_CODES.M) {
            minute = timePicker.getMinute();
        } else {
            minute = timePicker.getCurrentMinute();
        }
    }
}
";

pub struct EffectFixture {
    pub name: &'static str,
    pub source: &'static str,
    /// Which script to apply: `hour` or `minute`.
    pub script: &'static str,
    pub method: &'static str,
    pub arity: usize,
}

/// Targets whose deprecated call carries side effects that a naive
/// denormalization would duplicate into both guard branches.
pub fn effect_fixtures() -> Vec<EffectFixture> {
    vec![
        EffectFixture {
            name: "impure argument",
            source: "class A {\n    void m(TimePicker picker) {\n        picker.setCurrentHour(tick());\n    }\n}\n",
            script: "hour",
            method: "setCurrentHour",
            arity: 1,
        },
        EffectFixture {
            name: "impure operand",
            source: "class A {\n    void m(TimePicker picker) {\n        picker.setCurrentHour(tick() + 1);\n    }\n}\n",
            script: "hour",
            method: "setCurrentHour",
            arity: 1,
        },
        EffectFixture {
            name: "impure receiver",
            source: "class A {\n    void m(Pickers pickers) {\n        pickers.nextPicker().setCurrentHour(5);\n    }\n}\n",
            script: "hour",
            method: "setCurrentHour",
            arity: 1,
        },
        EffectFixture {
            name: "impure receiver, value used",
            source: "class A {\n    int m(Pickers pickers) {\n        int minute = pickers.nextPicker().getCurrentMinute();\n        return minute;\n    }\n}\n",
            script: "minute",
            method: "getCurrentMinute",
            arity: 0,
        },
        EffectFixture {
            name: "two impure arguments in a guard",
            source: "class A {\n    void m(TimePicker picker, boolean c) {\n        if (c) {\n            picker.setCurrentHour(tickA() * tickB());\n        }\n        tickC();\n    }\n}\n",
            script: "hour",
            method: "setCurrentHour",
            arity: 1,
        },
    ]
}

// ---- readability fixtures -------------------------------------------------

const BODY_STATEMENTS: &[&str] = &[
    "int x = 1;",
    "log(\"value\");",
    "total = total + step;",
    "picker.setHour(hour);",
    "String label = prefix + name;",
    "if (ready) {\n    start();\n} else {\n    stop();\n}",
    "for (int i = 0; i < n; i++) {\n    sum += i;\n}",
    "return;",
    "view.setText(Html.fromHtml(source));",
    "canvas.saveLayer(left, top, right, bottom, paint);",
];

/// A wrapped slice body of random statements.
pub fn readability_fixture(seed: u64) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut body = String::new();
    let n = rng.gen_range(0..8);
    for k in 0..n {
        let s = BODY_STATEMENTS[rng.gen_range(0..BODY_STATEMENTS.len() - 1)];
        let s = if k + 1 == n && rng.gen_bool(0.2) { BODY_STATEMENTS[7] } else { s };
        for line in s.lines() {
            body.push_str(&format!("        {line}\n"));
        }
        if s == "return;" {
            break;
        }
    }
    wrap(&body)
}

pub fn wrap(body: &str) -> String {
    format!("class MainActivity {{\n    public static void main() {{\n{body}    }}\n}}\n")
}

/// `text` with one unused declaration added at the top of the body.
pub fn with_noop_declaration(text: &str) -> String {
    let head = "    public static void main() {\n";
    let at = text.find(head).expect("wrapped fixture") + head.len();
    format!("{}        int noopDeclaration = 0;\n{}", &text[..at], &text[at..])
}

// ---- call graphs ------------------------------------------------------------

pub struct CallGraph {
    pub source: String,
    pub seed_expr: String,
    /// Qualified names reachable from the seed expression.
    pub reachable: BTreeSet<String>,
}

/// A class of methods calling each other at random, possibly cyclically,
/// plus a nested helper class some of them instantiate.
pub fn call_graph(seed: u64) -> CallGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(1..8);
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut uses_helper = vec![false; n];
    for (i, out) in edges.iter_mut().enumerate() {
        for j in 0..n {
            if rng.gen_bool(0.25) {
                out.push(j);
            }
        }
        uses_helper[i] = rng.gen_bool(0.15);
    }
    let helper_calls: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.2)).collect();
    let mut methods = String::new();
    for i in 0..n {
        let mut terms: Vec<String> = edges[i].iter().map(|j| format!("m{j}()")).collect();
        if uses_helper[i] {
            terms.push("new Helper().value()".into());
        }
        if terms.is_empty() {
            terms.push(i.to_string());
        }
        methods.push_str(&format!("    int m{i}() {{\n        return {};\n    }}\n\n", terms.join(" + ")));
    }
    let helper_body: Vec<String> = helper_calls.iter().map(|j| format!("m{j}()")).collect();
    let helper_body = if helper_body.is_empty() { "0".to_string() } else { helper_body.join(" + ") };
    let source = format!(
        "class Graph {{\n{methods}    static class Helper {{\n        int value() {{\n            return {helper_body};\n        }}\n    }}\n\n    void run() {{\n        sink(0);\n    }}\n}}\n"
    );

    let roots: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    let root_helper = rng.gen_bool(0.2);
    let mut seed_terms: Vec<String> = roots.iter().map(|r| format!("m{r}()")).collect();
    if root_helper {
        seed_terms.push("new Helper()".into());
    }
    if seed_terms.is_empty() {
        seed_terms.push("42".into());
    }

    // breadth-first reachability; the helper node is `n`
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<usize> = roots.iter().copied().collect();
    if root_helper {
        queue.push_back(n);
    }
    while let Some(v) = queue.pop_front() {
        if !seen.insert(v) {
            continue;
        }
        let next: Vec<usize> = if v == n {
            helper_calls.clone()
        } else {
            let mut e = edges[v].clone();
            if uses_helper[v] {
                e.push(n);
            }
            e
        };
        queue.extend(next);
    }
    let reachable = seen.into_iter().map(|v| if v == n { "Graph.Helper".to_string() } else { format!("Graph.m{v}") }).collect();
    CallGraph { source, seed_expr: seed_terms.join(" + "), reachable }
}
