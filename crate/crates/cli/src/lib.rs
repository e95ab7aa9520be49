//! The `coha` command-line front end.
//!
//! Exit status: 0 on success, 2 for unparsable input, 3 for violated
//! preconditions, 4 for internal failures such as an inexact division, and
//! 1 for anything else.

pub mod doc;
pub mod expr;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use coha_core::filtration::Filtration;
use coha_core::kac::{self, DEFAULT_LIMIT};
use coha_core::poly::Degree;
use coha_core::wheel::{self, spherical_span, wheel_member, wheel_member_exhaustive};
use coha_core::{DimVec, KernelMode, Monomial, QKernel, QPolynomial, Quiver, ShuffleAlgebra, SignTwist, Torus, Var};

use doc::QuiverDocument;
use expr::{parse_dim, parse_element};
use report::{Report, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Other(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<coha_core::Error> for CliError {
    fn from(e: coha_core::Error) -> Self {
        use coha_core::Error as E;
        match e {
            E::NonExactDivision(_) | E::KernelInvariant(_) => CliError::Internal(e.to_string()),
            E::NotColorSymmetric(_) | E::VariableOutOfRange { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "coha", version, about = "Exact shuffle-algebra computations for symmetric quivers")]
pub struct Cli {
    /// Quiver document.
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "preset")]
    pub quiver: Option<PathBuf>,
    /// Built-in quiver instead of a document.
    #[arg(long, global = true, value_parser = doc::PRESETS)]
    pub preset: Option<String>,
    /// Print `key=value` records instead of tables.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Seed for random parameter specialisations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeta kernel numerators and exponents.
    Kernel,
    /// Shuffle product of two elements.
    Product {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Super bracket of two elements.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Membership in F^d.
    Member {
        #[arg(long)]
        d: i64,
        /// Use the recursive criterion.
        #[arg(long)]
        recursive: bool,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Bases of the slices of F^d(V_n).
    Basis {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        dim: String,
        #[arg(long)]
        deg_max: u32,
    },
    /// BPS bases, the slices of F^1(V_n).
    Bps {
        #[arg(long)]
        dim: String,
        #[arg(long)]
        deg_max: u32,
    },
    /// PBW check with the canonical sign twist.
    PbwCheck {
        #[arg(long)]
        dim_max: String,
        #[arg(long)]
        deg_max: u32,
        #[arg(long)]
        d_max: u32,
    },
    /// Wheel conditions of a tripled kernel.
    WheelCheck {
        /// Test every slot pattern.
        #[arg(long)]
        exhaustive: bool,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Products of spherical generators; each `--degrees` is one word
    /// such as `v:0,v:1` or, for one vertex, `0,1`.
    Spherical {
        #[arg(long, required = true)]
        degrees: Vec<String>,
    },
    /// F^1 intersected with the wheel subspace against A_{Q,n}(1).
    Conjecture {
        #[arg(long)]
        dim_max: String,
        #[arg(long)]
        deg_max: u32,
    },
    /// Counts of representations over F_q, or the interpolated Kac
    /// polynomial when `--q` is absent.
    Kac {
        #[arg(long)]
        dim: String,
        #[arg(long)]
        q: Option<u32>,
    },
}

/// The quiver a command runs against.
pub struct Context {
    pub doc: QuiverDocument,
    pub seed: u64,
}

impl Context {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let src = match (&cli.quiver, &cli.preset) {
            (Some(path), _) => std::fs::read_to_string(path)
                .map_err(|e| CliError::Other(format!("cannot read {}: {e}", path.display())))?,
            (None, Some(name)) => doc::preset(name).expect("value parser checks presets").to_owned(),
            (None, None) => return Err(CliError::Parse("no quiver given; pass --quiver FILE or --preset NAME".into())),
        };
        let doc = QuiverDocument::parse(&src).map_err(|e| CliError::Parse(format!("quiver document: {e}")))?;
        Ok(Context { doc, seed: cli.seed })
    }

    pub fn kernel(&self) -> Result<QKernel, CliError> {
        Ok(self.doc.kernel()?)
    }

    pub fn quiver(&self) -> Result<Quiver, CliError> {
        Ok(self.doc.quiver()?)
    }
}

fn degree_str(p: &QPolynomial) -> String {
    match p.total_degree() {
        Degree::Finite(d) => d.to_string(),
        Degree::NegInfinity => "-".into(),
    }
}

fn parse_word(k: &QKernel, s: &str) -> Result<Vec<(usize, u32)>, CliError> {
    let bad = |m: String| CliError::Parse(format!("spherical word {s:?}: {m}"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        let (vertex, degree) = match item.split_once(':') {
            Some((v, d)) => (k.quiver().vertex_index(v.trim()).map_err(|e| bad(e.to_string()))?, d),
            None if k.vertex_count() == 1 => (0, item),
            None => return Err(bad(format!("{item:?} needs a vertex, as in `v:{item}`"))),
        };
        let degree = degree.trim().parse::<u32>().map_err(|e| bad(format!("{degree:?}: {e}")))?;
        out.push((vertex, degree));
    }
    Ok(out)
}

fn word_str(k: &QKernel, word: &[(usize, u32)]) -> String {
    let names = k.quiver().vertices();
    word.iter().map(|&(v, d)| format!("{}:{d}", names[v])).collect::<Vec<_>>().join(",")
}

fn kac_poly_str(coeffs: &[coha_core::Rational]) -> String {
    let q = Var::param("q");
    QPolynomial::from_terms(coeffs.iter().enumerate().map(|(e, c)| (Monomial::var(q, e as u32), c.clone()))).to_string()
}

fn dims_and_elements(filt: &Filtration<coha_core::Rational>, cmd: &'static str, n: &DimVec, d: u32, deg_max: u32) -> Result<Report, CliError> {
    let mut dims = Table::new(&["n", "deg", "d", "dim", "ambient"]);
    let mut elems = Table::new(&["n", "deg", "d", "index", "poly"]);
    for degree in 0..=deg_max {
        let s = filt.subspace(n, d, degree)?;
        dims.push(row![n, degree, d, s.dim(), s.ambient_dim()]);
        for (i, e) in s.elements().into_iter().enumerate() {
            elems.push(row![n, degree, d, i, e.poly()]);
        }
    }
    let mut r = Report::new(cmd);
    r.add(dims);
    r.add(elems);
    Ok(r)
}

pub fn run(ctx: &Context, cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Kernel => {
            let k = ctx.kernel()?;
            let names = k.quiver().vertices();
            let mut t = Table::new(&["i", "j", "delta", "sharp", "numerator"]);
            for i in 0..k.vertex_count() {
                for j in 0..k.vertex_count() {
                    t.push(row![names[i], names[j], k.delta(i, j), k.sharp(i, j), k.numerator(i, j)]);
                }
            }
            let mut r = Report::new("kernel");
            r.add(t);
            Ok(r)
        }
        Command::Product { left, right } | Command::Bracket { left, right } => {
            let k = ctx.kernel()?;
            let alg = ShuffleAlgebra::new(k.clone());
            let e = parse_element(&k, left)?;
            let f = parse_element(&k, right)?;
            let (name, out) = match cmd {
                Command::Product { .. } => ("product", alg.product(&e, &f)?),
                _ => ("bracket", alg.bracket(&e, &f)?),
            };
            let mut t = Table::new(&["n", "deg", "poly"]);
            t.push(row![out.n(), degree_str(out.poly()), out.poly()]);
            let mut r = Report::new(name);
            r.add(t);
            Ok(r)
        }
        Command::Member { d, recursive, element } => {
            let k = ctx.kernel()?;
            let e = parse_element(&k, element)?;
            let filt = Filtration::new(ShuffleAlgebra::new(k));
            let (method, member) = if *recursive {
                ("recursive", filt.member_recursive(&e, *d)?)
            } else {
                ("direct", filt.member_direct(&e, *d)?)
            };
            let mut t = Table::new(&["n", "d", "method", "member"]);
            t.push(row![e.n(), d, method, member]);
            let mut r = Report::new("member");
            r.add(t);
            Ok(r)
        }
        Command::Basis { d, dim, deg_max } => {
            let k = ctx.kernel()?;
            let n = parse_dim(&k, dim)?;
            let filt = Filtration::new(ShuffleAlgebra::new(k));
            dims_and_elements(&filt, "basis", &n, *d, *deg_max)
        }
        Command::Bps { dim, deg_max } => {
            let k = ctx.kernel()?;
            let n = parse_dim(&k, dim)?;
            let filt = Filtration::new(ShuffleAlgebra::new(k));
            dims_and_elements(&filt, "bps", &n, 1, *deg_max)
        }
        Command::PbwCheck { dim_max, deg_max, d_max } => {
            let k = ctx.kernel()?;
            let n = parse_dim(&k, dim_max)?;
            let twist = SignTwist::canonical(&k);
            let filt = Filtration::new(ShuffleAlgebra::new(k));
            let rep = filt.pbw_check(&twist, &n, *deg_max, *d_max, ctx.seed)?;
            let mut cells = Table::new(&["n", "deg", "d", "dim", "monomials", "rank", "contained", "passed"]);
            for c in &rep.cells {
                cells.push(row![c.n, c.degree, c.d, c.dim, c.monomials, c.rank, c.contained, c.passed()]);
            }
            let failed = rep.cells.iter().filter(|c| !c.passed()).count();
            let mut summary = Table::new(&["cells", "failed", "specialized", "verdict"]);
            summary.push(row![rep.cells.len(), failed, rep.specialized, if rep.passed() { "pass" } else { "fail" }]);
            let mut r = Report::new("pbw-check");
            r.add(cells);
            r.add(summary);
            Ok(r)
        }
        Command::WheelCheck { exhaustive, element } => {
            let k = ctx.kernel()?;
            let e = parse_element(&k, element)?;
            let count = wheel::instances(&k, e.n(), !*exhaustive)?.len();
            let ok = if *exhaustive { wheel_member_exhaustive(&k, &e)? } else { wheel_member(&k, &e)? };
            let mut t = Table::new(&["n", "instances", "wheel"]);
            t.push(row![e.n(), count, ok]);
            let mut r = Report::new("wheel-check");
            r.add(t);
            Ok(r)
        }
        Command::Spherical { degrees } => {
            let k = ctx.kernel()?;
            let alg = ShuffleAlgebra::new(k.clone());
            let words: Vec<Vec<(usize, u32)>> = degrees.iter().map(|w| parse_word(&k, w)).collect::<Result<_, _>>()?;
            let tripled = k.mode() == KernelMode::Tripled;
            let mut products = Table::new(&["word", "n", "deg", "wheel", "poly"]);
            for w in &words {
                let p = wheel::spherical_product(&alg, w)?;
                let wheel = if tripled { wheel_member(&k, &p)?.to_string() } else { "-".into() };
                products.push(row![word_str(&k, w), p.n(), degree_str(p.poly()), wheel, p.poly()]);
            }
            let mut slices = Table::new(&["n", "deg", "rank"]);
            for s in spherical_span(&alg, &words, ctx.seed)? {
                slices.push(row![s.n, s.degree, s.rank()]);
            }
            let mut r = Report::new("spherical");
            r.add(products);
            r.add(slices);
            Ok(r)
        }
        Command::Conjecture { dim_max, deg_max } => {
            let k = ctx.kernel()?;
            if k.torus() != Torus::Generic {
                return Err(CliError::Precondition("the conjecture report needs `torus: generic`".into()));
            }
            let n = parse_dim(&k, dim_max)?;
            let filt = Filtration::new(ShuffleAlgebra::new(k));
            let rows = wheel::conjecture_report(&filt, &n, *deg_max, ctx.seed, DEFAULT_LIMIT)?;
            let mut slices = Table::new(&["n", "deg", "f1dim", "rank"]);
            let mut summary = Table::new(&["n", "rank", "spec1", "spec2", "exact", "kac", "verdict"]);
            for row in &rows {
                for (deg, f1, rank) in &row.slices {
                    slices.push(row![row.n, deg, f1, rank]);
                }
                let j = &row.joint;
                let exact = j.exact.map_or("-".to_string(), |x| x.to_string());
                let kac = row.kac_at_one.as_ref().map_or("-".to_string(), |a| a.to_string());
                summary.push(row![row.n, j.dim, j.specialized[0], j.specialized[1], exact, kac, row.verdict.as_str()]);
                if let Some(note) = &row.note {
                    eprintln!("note: {}: {note}", row.n);
                }
            }
            let mut r = Report::new("conjecture");
            r.add(slices);
            r.add(summary);
            Ok(r)
        }
        Command::Kac { dim, q } => {
            let quiver = ctx.quiver()?;
            let n: DimVec = dim.parse().map_err(|e| CliError::Parse(format!("dimension vector {dim:?}: {e}")))?;
            if n.len() != quiver.vertex_count() {
                return Err(CliError::Parse(format!("dimension vector {n} does not match {} vertices", quiver.vertex_count())));
            }
            let mut counts = Table::new(&["n", "q", "classes", "indec", "absindec"]);
            let mut poly = Table::new(&["n", "kac", "at1"]);
            let list = match q {
                Some(q) => vec![kac::abs_indec_count(&quiver, &n, *q, DEFAULT_LIMIT)?],
                None => {
                    let (coeffs, list) = kac::kac_polynomial(&quiver, &n, DEFAULT_LIMIT)?;
                    let at1 = kac::evaluate(&coeffs, &coha_core::Rational::from_integer(1.into()));
                    poly.push(row![n, kac_poly_str(&coeffs), at1]);
                    list
                }
            };
            for c in list {
                counts.push(row![c.n, c.q, c.classes, c.indecomposable, c.absolutely_indecomposable]);
            }
            let mut r = Report::new("kac");
            r.add(counts);
            r.add(poly);
            Ok(r)
        }
    }
}
