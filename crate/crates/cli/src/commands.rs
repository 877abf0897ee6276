use std::error::Error;
use std::fs;

use hkmon::automaton::{
    leading_term_language, minimal_forbidden_words, Growth, NormalWordDfa, PatternFamily,
};
use hkmon::cycle::enumerate_sprime_rules;
use hkmon::rewrite::{RuleKind, RuleSystem};
use hkmon::{crosscheck, Digraph, GenOrder, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::output::{Format, Out};
use crate::{Cli, Command, GraphArgs, SystemArg, EXIT_VERIFY};

type CmdResult = Result<u8, Box<dyn Error>>;

struct Ctx {
    graph: Digraph,
    order: GenOrder,
    letters: bool,
}

impl Ctx {
    fn n(&self) -> usize {
        self.graph.n()
    }

    fn show(&self, w: &Word) -> String {
        if self.letters {
            w.render(self.n())
        } else {
            w.to_string()
        }
    }

    fn word(&self, literal: &str) -> Result<Word, Box<dyn Error>> {
        let w = Word::parse(literal)?;
        w.check_alphabet(self.n())?;
        Ok(w)
    }

    fn system(&self, which: SystemArg) -> Result<RuleSystem, Box<dyn Error>> {
        if which == SystemArg::T {
            return Ok(RuleSystem::t_with_order(&self.graph, self.order.clone())?);
        }
        let n = self.n();
        if n < 3 || self.graph != Digraph::cycle(n)? {
            return Err("the S and Sprime systems need an oriented cycle (use --cycle N)".into());
        }
        if !self.order.is_identity() {
            return Err("the S and Sprime systems use the natural generator order".into());
        }
        Ok(match which {
            SystemArg::S => RuleSystem::s(n)?,
            _ => RuleSystem::s_prime(n)?,
        })
    }
}

fn load_graph(args: &GraphArgs) -> Result<Digraph, Box<dyn Error>> {
    let sources = usize::from(args.graph.is_some())
        + usize::from(args.cycle.is_some())
        + usize::from(args.example_s4);
    if sources == 0 {
        return Err("no graph given; use one of --graph FILE, --cycle N, --example-s4".into());
    }
    if sources > 1 {
        return Err(
            "conflicting graph sources; use exactly one of --graph, --cycle, --example-s4".into(),
        );
    }
    if let Some(path) = &args.graph {
        let text =
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        return Ok(Digraph::parse(&text)?);
    }
    if let Some(n) = args.cycle {
        return Ok(Digraph::cycle(n)?);
    }
    Ok(Digraph::cycle_with_tail())
}

fn load_order(text: Option<&str>, n: usize) -> Result<GenOrder, Box<dyn Error>> {
    let Some(text) = text else {
        return Ok(GenOrder::identity(n));
    };
    let perm = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad generator order {text:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if perm.len() != n {
        return Err(format!(
            "generator order lists {} generators, the graph has {n}",
            perm.len()
        )
        .into());
    }
    Ok(GenOrder::from_ascending(&perm)?)
}

pub fn run(cli: &Cli) -> CmdResult {
    let graph = load_graph(&cli.graph)?;
    let order = load_order(cli.graph.order.as_deref(), graph.n())?;
    let ctx = Ctx {
        letters: cli.letters || cli.graph.example_s4,
        graph,
        order,
    };
    let mut out = Out::new(cli.format);
    let code = match &cli.command {
        Command::Normalize {
            words,
            system,
            trace,
            random_choices,
        } => normalize(
            &ctx,
            &mut out,
            words,
            *system,
            *trace,
            random_choices.then_some(cli.seed),
        )?,
        Command::Eq { u, v } => eq(&ctx, &mut out, u, v)?,
        Command::Basis { system, cap } => basis(&ctx, &mut out, *system, *cap)?,
        Command::Automaton { out: path } => automaton(&ctx, &mut out, path.as_deref())?,
        Command::Growth { max_len } => growth(&ctx, &mut out, *max_len)?,
        Command::Classify => classify(&ctx, &mut out)?,
        Command::Obstructions { max_len } => obstructions(&ctx, &mut out, *max_len, cli.budget)?,
        Command::Confluence { max_len, system } => {
            confluence(&ctx, &mut out, *max_len, *system, cli.budget)?
        }
        Command::OracleCheck { max_len, slack } => {
            oracle_check(&ctx, &mut out, *max_len, *slack, cli.budget)?
        }
        Command::Enumerate { max_len } => enumerate(&ctx, &mut out, *max_len, cli.budget)?,
    };
    print!("{}", out.finish());
    Ok(code)
}

fn normalize(
    ctx: &Ctx,
    out: &mut Out,
    words: &[String],
    system: SystemArg,
    trace: bool,
    seed: Option<u64>,
) -> CmdResult {
    let sys = ctx.system(system)?;
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    for literal in words {
        let w = ctx.word(literal)?;
        if trace {
            for (m, next) in sys.trace(&w) {
                out.line(
                    format!(
                        "  {} at {}..{} -> {}",
                        m.kind,
                        m.start,
                        m.end,
                        ctx.show(&next)
                    ),
                    "step",
                    format!("{} {}..{} {}", m.kind, m.start, m.end, ctx.show(&next)),
                );
            }
        }
        let nf = match rng.as_mut() {
            Some(rng) => sys.normal_form_with(&w, |ms| rng.gen_range(0..ms.len())),
            None => sys.normal_form(&w),
        };
        out.line(
            format!("{} -> {}", ctx.show(&w), ctx.show(&nf)),
            &ctx.show(&w),
            ctx.show(&nf),
        );
    }
    Ok(0)
}

fn eq(ctx: &Ctx, out: &mut Out, u: &str, v: &str) -> CmdResult {
    let sys = ctx.system(SystemArg::T)?;
    let (u, v) = (ctx.word(u)?, ctx.word(v)?);
    let (nu, nv) = (sys.normal_form(&u), sys.normal_form(&v));
    let equal = nu == nv;
    out.line(if equal { "equal" } else { "not equal" }, "equal", equal);
    if out.format() == Format::Records {
        out.kv("normal_form_u", ctx.show(&nu));
        out.kv("normal_form_v", ctx.show(&nv));
    }
    Ok(0)
}

fn basis(ctx: &Ctx, out: &mut Out, system: SystemArg, cap: usize) -> CmdResult {
    let sys = ctx.system(system)?;
    match system {
        SystemArg::T => {
            let rules = [
                (
                    RuleKind::TI,
                    "t w t -> t w",
                    "w avoids t; no arrow from a letter of w into t",
                ),
                (
                    RuleKind::TII,
                    "t w t -> w t",
                    "w avoids t; no arrow from t into a letter of w",
                ),
                (
                    RuleKind::TIII,
                    "t1 w t2 -> t2 t1 w",
                    "t1 > t2; no arrow between t2 and any letter of t1 w",
                ),
            ];
            for (kind, rule, side) in rules {
                out.line(
                    format!("{:<6} {rule:<20} {side}", kind.label()),
                    kind.label(),
                    rule,
                );
            }
            out.text("leading terms:");
            let set = leading_term_language(&ctx.graph, sys.order());
            for (family, key) in [
                (PatternFamily::I, "pattern.i"),
                (PatternFamily::II, "pattern.ii"),
                (PatternFamily::III, "pattern.iii"),
            ] {
                for p in set.family(family) {
                    out.line(
                        format!("  {key:<12} {}", p.render(ctx.n())),
                        key,
                        p.render(ctx.n()),
                    );
                }
            }
        }
        SystemArg::S => {
            let rules = [
                (RuleKind::S1, "x_i x_i -> x_i"),
                (RuleKind::S2, "x_j x_i -> x_i x_j, 1 < j-i < n-1"),
                (
                    RuleKind::S3,
                    "x_n (x_1..x_i) x_j -> x_j x_n (x_1..x_i), i+1 < j < n-1",
                ),
                (RuleKind::S4, "x_i u x_i -> x_i u, u avoids x_i and x_{i-1}"),
                (RuleKind::S5, "x_i v x_i -> v x_i, v avoids x_i and x_{i+1}"),
            ];
            for (kind, rule) in rules {
                out.line(format!("{:<6} {rule}", kind.label()), kind.label(), rule);
            }
        }
        SystemArg::SPrime => {
            let rules = enumerate_sprime_rules(ctx.n(), cap)?;
            for r in &rules {
                let rule = format!("{} -> {}", ctx.show(&r.lhs), ctx.show(&r.rhs));
                out.line(
                    format!("{:<7} {rule}", r.kind.label()),
                    r.kind.label(),
                    rule,
                );
            }
            out.kv("rules", rules.len());
        }
    }
    Ok(0)
}

fn automaton(ctx: &Ctx, out: &mut Out, path: Option<&std::path::Path>) -> CmdResult {
    let dfa = NormalWordDfa::for_graph(&ctx.graph, &ctx.order);
    let dot = dfa.to_dot();
    match path {
        Some(path) => {
            fs::write(path, &dot).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            out.kv("states", dfa.state_count());
            out.kv("written", path.display());
        }
        None => print!("{dot}"),
    }
    Ok(0)
}

fn growth(ctx: &Ctx, out: &mut Out, max_len: usize) -> CmdResult {
    let dfa = NormalWordDfa::for_graph(&ctx.graph, &ctx.order);
    let report = dfa.growth_report(max_len);
    let cumulative = report.cumulative();
    out.text(format!(
        "{:>4}  {:>12}  {:>12}",
        "len", "count", "cumulative"
    ));
    for (len, (c, acc)) in report.counts.iter().zip(&cumulative).enumerate() {
        match out.format() {
            Format::Text => out.text(format!("{len:>4}  {c:>12}  {acc:>12}")),
            Format::Records => {
                out.kv(&format!("count.{len}"), c);
                out.kv(&format!("cumulative.{len}"), acc);
            }
        }
    }
    out.kv("growth", report.classification);
    Ok(0)
}

fn classify(ctx: &Ctx, out: &mut Out) -> CmdResult {
    let growth = NormalWordDfa::for_graph(&ctx.graph, &ctx.order).classify_growth();
    let two_cycles = ctx.graph.has_two_connected_cycles();
    out.line(growth, "growth", growth);
    if let Growth::Polynomial { gk } = growth {
        if out.format() == Format::Records {
            out.kv("gk", gk);
        }
    }
    let verdict = if two_cycles {
        "two oriented cycles joined by an oriented path"
    } else {
        "no two oriented cycles joined by an oriented path"
    };
    out.line(
        format!("graph criterion: {verdict}"),
        "two_connected_cycles",
        two_cycles,
    );
    let consistent = two_cycles == (growth == Growth::Exponential);
    if !consistent {
        out.line(
            "warning: growth class disagrees with the graph criterion",
            "consistent",
            false,
        );
        return Ok(EXIT_VERIFY);
    }
    Ok(0)
}

fn obstructions(ctx: &Ctx, out: &mut Out, max_len: usize, budget: u128) -> CmdResult {
    let words = minimal_forbidden_words(&ctx.graph, &ctx.order, max_len, budget)?;
    for w in &words {
        out.line(ctx.show(w), "word", ctx.show(w));
    }
    out.kv("count", words.len());
    Ok(0)
}

fn confluence(
    ctx: &Ctx,
    out: &mut Out,
    max_len: usize,
    system: SystemArg,
    budget: u128,
) -> CmdResult {
    let sys = ctx.system(system)?;
    let report = sys.check_local_confluence(max_len, budget)?;
    out.kv("words_checked", report.words_checked);
    out.kv("violations", report.violations);
    for c in &report.counterexamples {
        let forms: Vec<String> = c
            .reducts
            .iter()
            .map(|(r, nf)| format!("{} => {}", ctx.show(r), ctx.show(nf)))
            .collect();
        out.line(
            format!("counterexample {}: {}", ctx.show(&c.word), forms.join("; ")),
            "counterexample",
            format!("{} {}", ctx.show(&c.word), forms.join("; ")),
        );
    }
    out.line(
        if report.ok() { "ok" } else { "not confluent" },
        "ok",
        report.ok(),
    );
    Ok(if report.ok() { 0 } else { EXIT_VERIFY })
}

fn oracle_check(ctx: &Ctx, out: &mut Out, max_len: usize, slack: usize, budget: u128) -> CmdResult {
    if !ctx.order.is_identity() {
        return Err("oracle-check uses the natural generator order".into());
    }
    let report = crosscheck(&ctx.graph, max_len, slack, budget)?;
    out.kv("words", report.words);
    out.kv("classes", report.classes);
    out.kv("boundary_classes", report.boundary_classes);
    let cumulative: Vec<String> = report
        .cumulative_classes
        .iter()
        .map(u64::to_string)
        .collect();
    out.kv("cumulative_classes", cumulative.join(","));
    out.kv("violations", report.violations.len());
    for v in &report.violations {
        out.line(format!("violation: {v:?}"), "violation", format!("{v:?}"));
    }
    out.line(
        if report.ok() {
            "ok"
        } else {
            "violations found"
        },
        "ok",
        report.ok(),
    );
    Ok(if report.ok() { 0 } else { EXIT_VERIFY })
}

fn enumerate(ctx: &Ctx, out: &mut Out, max_len: usize, budget: u128) -> CmdResult {
    let dfa = NormalWordDfa::for_graph(&ctx.graph, &ctx.order);
    let mut words = dfa.enumerate_normal_words(max_len, budget)?;
    words.sort_by(|a, b| ctx.order.deglex(a.letters(), b.letters()));
    for w in &words {
        out.line(ctx.show(w), "word", ctx.show(w));
    }
    out.kv("count", words.len());
    Ok(0)
}
