//! `cwilf`: command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or invalid
//! input, 3 enumeration budget exceeded.

mod cache;
mod render;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cwilf::equivalence::{self, FamilyKind, Phi};
use cwilf::overlap::{self, Method};
use cwilf::perm::{self, match_positions};
use cwilf::qseries::{brute_inm, brute_nm_xy, match_distribution};
use cwilf::recursions::{Family, FamilyParams, RecursionSpec};
use cwilf::tabloids;
use cwilf::{verify, Budget, Error, PatternSet, Permutation};
use serde::Serialize;
use serde_json::{json, Value};

use cache::{Cache, Outcome};
use render::{render, Format};

#[derive(Parser)]
#[command(name = "cwilf", version, about = "Consecutive pattern avoidance: exact enumeration, recursions and checks")]
struct Cli {
    /// Worker threads; 1 gives a fully sequential run.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Largest permutation length enumerated exhaustively.
    #[arg(long, global = true, env = "CWILF_BUDGET", default_value_t = 9)]
    budget: usize,

    /// Directory for cached results; caching is off when unset.
    #[arg(long, global = true, env = "CWILF_CACHE")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Serialize)]
struct SetArg {
    /// Patterns, comma separated (e.g. 1324,1423).
    #[arg(long = "set", alias = "pattern", required = true, value_delimiter = ',')]
    set: Vec<Permutation>,
}

#[derive(Args, Clone, Serialize)]
struct OrderArg {
    /// Largest n.
    #[arg(long)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum MethodArg {
    Scan,
    Fast,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CheckArg {
    ThmKey,
    ThmSet,
}

#[derive(Subcommand)]
enum Command {
    /// des, inv, coinv, lrmin and the descent set of a permutation.
    Stats { sigma: Permutation },
    /// The reduction of a word of distinct integers.
    Reduce {
        /// Digits ("53962") or comma/space separated integers.
        word: String,
    },
    /// 1-based start positions of pattern matches.
    Match {
        #[command(flatten)]
        set: SetArg,
        sigma: Permutation,
    },
    /// Minimal overlap of one pattern.
    Minoverlap {
        tau: Permutation,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Mutual minimal overlap of two patterns.
    Mutual {
        alpha: Permutation,
        beta: Permutation,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Maximum packings with 1..=n matches.
    Packings {
        tau: Permutation,
        #[arg(long)]
        n: usize,
    },
    /// Brute-force INM(t,q,z) through order n.
    Inm {
        #[command(flatten)]
        set: SetArg,
        #[command(flatten)]
        order: OrderArg,
    },
    /// IU(q,z) from the recursion for one pattern or a compatible set.
    Iu {
        #[command(flatten)]
        set: SetArg,
        #[command(flatten)]
        order: OrderArg,
        /// Also compare with the reciprocal of brute-force INM.
        #[arg(long, value_enum)]
        check: Option<CheckArg>,
    },
    /// Brute-force NM(t,x,y) with x on lrmin and y on 1+des.
    Nmxy {
        #[command(flatten)]
        set: SetArg,
        #[command(flatten)]
        order: OrderArg,
    },
    /// The joint distribution of matches, inv and coinv.
    Matchdist {
        #[command(flatten)]
        set: SetArg,
        #[command(flatten)]
        order: OrderArg,
        /// Specialize p = 1.
        #[arg(long)]
        p_one: bool,
    },
    /// A quoted U recursion, closed form, or IU recursion.
    Recur {
        #[arg(long)]
        family: String,
        #[arg(long = "patterns", value_delimiter = ',')]
        patterns: Vec<Permutation>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        k1: Option<usize>,
        #[arg(long)]
        k2: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        check_oracle: bool,
    },
    /// Filled brick tabloids and the involution on them.
    Tabloids {
        #[command(flatten)]
        set: SetArg,
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        fixed_only: bool,
        /// Check involution, orbit and sum properties instead of listing.
        #[arg(long)]
        verify: bool,
    },
    /// Classes of patterns with equal statistic-refined avoidance polynomials.
    Classify {
        /// File with one pattern per line; '#' starts a comment.
        #[arg(long = "patterns")]
        patterns_file: Option<PathBuf>,
        #[arg(long = "pattern", value_delimiter = ',')]
        inline: Vec<Permutation>,
        #[arg(long, default_value = "des")]
        stats: String,
        #[command(flatten)]
        order: OrderArg,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The match-replacing map for a pair of patterns.
    Phi {
        #[arg(long)]
        alpha: Permutation,
        #[arg(long)]
        beta: Permutation,
        #[arg(long)]
        sigma: Permutation,
    },
    /// Members of the t (blocks of 3) or s (blocks of 4) families.
    Family {
        kind: String,
        #[arg(long)]
        blocks: usize,
        /// One digit per block, each 1 or 2; all variants when omitted.
        #[arg(long)]
        variant: Option<String>,
    },
    /// Runs the whole verification suite.
    VerifyAll,
}

struct Ctx {
    budget: Budget,
    cache: Option<Cache>,
}

impl Ctx {
    /// Looks `op(params)` up in the cache, computing and storing on a miss.
    fn cached(&self, op: &str, params: Value, compute: impl FnOnce() -> cwilf::Result<Outcome>) -> cwilf::Result<Outcome> {
        let Some(cache) = &self.cache else {
            return compute();
        };
        let key = cache::key(op, &json!({ "params": params, "budget": self.budget.max_len }));
        if let Some(hit) = cache.load(&key) {
            return Ok(hit);
        }
        let out = compute()?;
        cache.store(&key, &out);
        Ok(out)
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn ok(payload: Value) -> cwilf::Result<Outcome> {
    Ok(Outcome { ok: true, payload })
}

fn pattern_set(set: &SetArg) -> cwilf::Result<PatternSet> {
    PatternSet::new(set.set.iter().cloned())
}

fn parse_word(word: &str) -> cwilf::Result<Vec<u64>> {
    let parts: Vec<&str> = word.split([',', ' ']).filter(|s| !s.is_empty()).collect();
    let tokens: Vec<String> = if parts.len() == 1 {
        parts[0].chars().map(String::from).collect()
    } else {
        parts.iter().map(|s| s.to_string()).collect()
    };
    tokens
        .iter()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("{t:?} is not a nonnegative integer")))
        })
        .collect()
}

fn method(m: Option<MethodArg>) -> Option<Method> {
    m.map(|m| match m {
        MethodArg::Scan => Method::DefinitionScan,
        MethodArg::Fast => Method::PrefixSuffix,
    })
}

fn read_patterns(path: &PathBuf) -> cwilf::Result<Vec<Permutation>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

fn run(cmd: &Command, ctx: &Ctx) -> cwilf::Result<Outcome> {
    let budget = &ctx.budget;
    match cmd {
        Command::Stats { sigma } => {
            let mut v = to_value(&sigma.stats());
            v["permutation"] = to_value(sigma);
            ok(v)
        }
        Command::Reduce { word } => ok(to_value(&perm::reduce(&parse_word(word)?)?)),
        Command::Match { set, sigma } => {
            let gamma = pattern_set(set)?;
            ok(json!({ "permutation": sigma, "set": set.set, "positions": match_positions(sigma, &gamma)? }))
        }
        Command::Minoverlap { tau, method: m } => ok(to_value(&match method(*m) {
            Some(m) => overlap::is_minimal_overlapping_by(tau, m, budget)?,
            None => overlap::is_minimal_overlapping(tau, budget)?,
        })),
        Command::Mutual { alpha, beta, method: m } => ok(to_value(&match method(*m) {
            Some(m) => overlap::are_mutually_minimal_overlapping_by(alpha, beta, m, budget)?,
            None => overlap::are_mutually_minimal_overlapping(alpha, beta, budget)?,
        })),
        Command::Packings { tau, n } => ctx.cached("packings", json!([tau, n]), || {
            ok(to_value(&overlap::packing_table(tau, *n, budget)?))
        }),
        Command::Inm { set, order } => ctx.cached("inm", json!([set, order]), || {
            ok(to_value(&brute_inm(&pattern_set(set)?, order.n, budget)?))
        }),
        Command::Nmxy { set, order } => ctx.cached("nmxy", json!([set, order]), || {
            ok(to_value(&brute_nm_xy(&pattern_set(set)?, order.n, budget)?))
        }),
        Command::Matchdist { set, order, p_one } => ctx.cached("matchdist", json!([set, order, p_one]), || {
            let md = match_distribution(&pattern_set(set)?, order.n, budget)?;
            ok(if *p_one { to_value(&md.at_p_one()) } else { to_value(&md) })
        }),
        Command::Iu { set, order, check } => ctx.cached("iu", json!([set, order, check]), || {
            let family = match (set.set.as_slice(), check) {
                ([tau], None | Some(CheckArg::ThmKey)) => Family::ThmKey { tau: tau.clone() },
                (_, None | Some(CheckArg::ThmSet)) => Family::ThmSet { gamma: set.set.clone() },
                (_, Some(CheckArg::ThmKey)) => {
                    return Err(Error::InvalidInput("--check thm-key takes exactly one pattern".into()))
                }
            };
            recursion(family, order.n, check.is_some(), budget)
        }),
        Command::Recur { family, patterns, p, k1, k2, s, order, check_oracle } => {
            let params = FamilyParams {
                patterns: patterns.clone(),
                p: *p,
                k1: *k1,
                k2: *k2,
                s: *s,
            };
            let key = json!([family, patterns, p, k1, k2, s, order, check_oracle]);
            ctx.cached("recur", key, || recursion(Family::from_tag(family, &params)?, order.n, *check_oracle, budget))
        }
        Command::Tabloids { set, order, fixed_only, verify } => {
            ctx.cached("tabloids", json!([set, order, fixed_only, verify]), || {
                let gamma = pattern_set(set)?;
                if *verify {
                    let r = tabloids::verify_involution(&gamma, order.n, budget)?;
                    let iu = brute_inm(&gamma, order.n, budget)?.reciprocal()?;
                    let matches_iu = &r.fixed_sum == iu.coeff(order.n);
                    let mut v = to_value(&r);
                    v["fixed_sum_equals_iu"] = json!(matches_iu);
                    return Ok(Outcome { ok: r.ok() && matches_iu, payload: v });
                }
                let objs = if *fixed_only {
                    tabloids::fixed_points(&gamma, order.n, budget)?
                } else {
                    tabloids::enumerate_objects(&gamma, order.n, budget)?
                };
                let rows: Vec<Value> = objs
                    .iter()
                    .map(|o| {
                        json!({
                            "bricks": o.tabloid.bricks(),
                            "sigma": o.sigma,
                            "sign": o.sign(),
                            "weight": o.weight(),
                        })
                    })
                    .collect();
                ok(json!({ "n": order.n, "count": rows.len(), "signed_sum": tabloids::signed_sum(&objs), "objects": rows }))
            })
        }
        Command::Classify { patterns_file, inline, stats, order, out } => {
            let mut pats = inline.clone();
            if let Some(path) = patterns_file {
                pats.extend(read_patterns(path)?);
            }
            let profile: BTreeSet<_> = equivalence::parse_profile(stats)?;
            let outcome = ctx.cached("classify", json!([pats, profile, order]), || {
                ok(to_value(&equivalence::classify(&pats, &profile, order.n, budget)?))
            })?;
            if let Some(path) = out {
                let text = render("classify", &outcome.payload, Format::Json);
                std::fs::write(path, text)
                    .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(outcome)
        }
        Command::Phi { alpha, beta, sigma } => {
            let map = Phi::new(alpha, beta)?;
            let image = Permutation::new(map.apply(sigma.entries())?)?;
            ok(json!({ "alpha": alpha, "beta": beta, "sigma": sigma, "image": image }))
        }
        Command::Family { kind, blocks, variant } => {
            let kind: FamilyKind = kind.parse()?;
            match variant {
                Some(v) => {
                    let bits: Vec<u8> = v
                        .chars()
                        .map(|c| c.to_digit(10).map(|d| d as u8).unwrap_or(0))
                        .collect();
                    ok(to_value(&equivalence::family(kind, *blocks, &bits)?))
                }
                None => ok(to_value(&equivalence::family_members(kind, *blocks)?)),
            }
        }
        Command::VerifyAll => {
            let report = verify::run_all(budget);
            Ok(Outcome { ok: report.all_pass(), payload: to_value(&report) })
        }
    }
}

fn recursion(family: Family, n: usize, check: bool, budget: &Budget) -> cwilf::Result<Outcome> {
    let spec = RecursionSpec::new(family, n);
    let mut v = json!({ "family": spec.family, "series": spec.evaluate()? });
    if !check {
        return ok(v);
    }
    let result = spec.check_oracle(budget)?;
    v["check"] = to_value(&result);
    Ok(Outcome { ok: result.agree, payload: v })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::VerifyAll => "verify-all",
        _ => "",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.budget == 0 {
        eprintln!("error: --budget must be at least 1");
        return ExitCode::from(2);
    }
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot configure {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        budget: Budget {
            max_len: cli.budget,
            max_tabloid_len: cli.budget.min(Budget::default().max_tabloid_len),
        },
        cache: cli.cache_dir.map(Cache::new),
    };
    match run(&cli.command, &ctx) {
        Ok(outcome) => {
            print!("{}", render(command_name(&cli.command), &outcome.payload, cli.format));
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidInput(_) => 2,
                Error::Budget { .. } => 3,
                Error::Inconsistent(_) => 1,
            })
        }
    }
}
