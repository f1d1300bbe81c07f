//! The `frobdesc` command line: documents in on stdin, one document out on
//! stdout.
//!
//! Exit status is 0 on success, 1 when the library reports a domain error
//! (the error is printed as an `error` document), and 2 for malformed input
//! or usage.

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cocycle::{mu_power_demo, picard_cokernel, unit_class};
use crate::descent::{
    check_equivariant, descend_module, element_descent, graded_ideal_descent, hom_space,
    GradedIdealTrunc, HomMode,
};
use crate::document::{Document, DocumentError};
use crate::error::Error;
use crate::field::{DegreeCap, Field};
use crate::moore::{
    is_fq_independent, moore_identity_check, moore_identity_sampled, moore_matrix, MooreInput,
};
use crate::selftest;
use crate::semilinear::{
    beta_surjectivity_report, descend_vector_space, fixed_space, lang_solve, lang_solve_dual,
    splitting_degree, CoefficientRing,
};

/// Environment variable that overrides the default degree cap.
pub const DEGREE_CAP_ENV: &str = "FROBDESC_DEGREE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "frobdesc",
    version,
    about = "Frobenius descent over finite fields"
)]
pub struct Cli {
    /// Largest absolute extension degree [F : F_p] the tool may construct.
    #[arg(long, global = true)]
    pub degree_cap: Option<usize>,
    /// Truncation degree for ideals given by generators.
    #[arg(long = "trunc", global = true, default_value_t = 4)]
    pub trunc: u32,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct fields, extend them, embed elements.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Moore matrices and the determinant identity.
    #[command(subcommand)]
    Moore(MooreCmd),
    /// Fixed spaces of semilinear maps.
    #[command(subcommand)]
    Fixed(FixedCmd),
    /// Lang's equation.
    #[command(subcommand)]
    Lang(LangCmd),
    /// Equivariant modules over finite algebras.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Descent of polynomials and graded ideals.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Unit coboundaries on the punctured line.
    #[command(subcommand)]
    Picard(PicardCmd),
    /// Run every self-check and print a pass/fail table.
    Selftest {
        /// Run only the check with this number.
        #[arg(long)]
        check: Option<u8>,
    },
}

#[derive(Debug, Args)]
pub struct QM {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
}

#[derive(Debug, Subcommand)]
pub enum FieldCmd {
    /// Print the descriptor of F_q^m.
    Construct(QM),
    /// Embed the field on stdin into its degree-e extension.
    Extend {
        #[arg(long)]
        e: u32,
    },
    /// Map the element on stdin into F_q^(m') for a multiple m' of m.
    Embed {
        #[arg(long = "into-m")]
        into_m: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum MooreCmd {
    /// Moore matrix of the elements on stdin.
    Matrix,
    /// Expand both sides of the determinant identity over F_q.
    DetIdentity {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: usize,
        /// Additionally check this many random points over F_q^(sample-m).
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        sample_m: u32,
    },
    /// F_q-independence of the elements on stdin.
    Independent,
}

#[derive(Debug, Subcommand)]
pub enum FixedCmd {
    /// F_q-basis of the fixed vectors.
    Space,
    /// Least extension over which the fixed vectors span.
    SplittingDegree,
    /// Descent certificate at the splitting degree.
    Descend,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Ring {
    Field,
    DualNumbers,
}

#[derive(Debug, Subcommand)]
pub enum LangCmd {
    /// Solve G^-1 phi(G) = A for the matrix (or dual matrix) on stdin.
    Solve,
    /// Solve for every target in GL_n and report the degrees needed.
    Report {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Ring::Field)]
        ring: Ring,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Mode {
    Linear,
    Equivariant,
}

#[derive(Debug, Subcommand)]
pub enum ModuleCmd {
    /// Check the module relations; reports the first failure.
    Check,
    /// Descend the module on stdin.
    Descend,
    /// Homomorphisms from the first module on stdin to the second.
    Hom {
        #[arg(long, value_enum, default_value_t = Mode::Equivariant)]
        mode: Mode,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdealCmd {
    /// Split a polynomial into F_q-rational pieces.
    DescendElement,
    /// Descend an ideal, given as an ideal document or by generators.
    DescendGraded,
}

#[derive(Debug, Subcommand)]
pub enum PicardCmd {
    /// Cokernel of the coboundary on units of F_q^m[x, 1/x].
    Cokernel(QM),
    /// Canonical representative of the unit on stdin.
    Class,
    /// The (q-1)-power map on the (q-1)-th roots of unity.
    MuDemo(QM),
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Domain(Error),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(msg) => Failure::Malformed(msg),
            other => Failure::Domain(other),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Domain(inner) => Failure::Domain(inner),
            other => Failure::Malformed(other.to_string()),
        }
    }
}

type CmdResult = std::result::Result<Document, Failure>;

/// Whether the command reads documents from stdin.
pub fn needs_input(cmd: &Command) -> bool {
    !matches!(
        cmd,
        Command::Selftest { .. }
            | Command::Field(FieldCmd::Construct(_))
            | Command::Moore(MooreCmd::DetIdentity { .. })
            | Command::Lang(LangCmd::Report { .. })
            | Command::Picard(PicardCmd::Cokernel(_))
            | Command::Picard(PicardCmd::MuDemo(_))
    )
}

/// Degree cap from the flag, else the environment override, else 24.
pub fn resolve_cap(
    flag: Option<usize>,
    env: Option<&str>,
) -> std::result::Result<DegreeCap, String> {
    if let Some(c) = flag {
        return Ok(DegreeCap(c));
    }
    match env {
        Some(v) => v
            .trim()
            .parse()
            .map(DegreeCap)
            .map_err(|_| format!("{DEGREE_CAP_ENV} must be a nonnegative integer, got {v:?}")),
        None => Ok(DegreeCap::default()),
    }
}

/// Parses `args` (including the program name) and runs against `input`.
pub fn run<I, T>(args: I, input: &str, env_cap: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let cap = match resolve_cap(cli.degree_cap, env_cap) {
        Ok(c) => c,
        Err(msg) => return malformed_output(msg),
    };
    if let Command::Selftest { check } = cli.command {
        let report = match check {
            None => selftest::run(cli.seed, cap),
            Some(id) if selftest::CHECKS.iter().any(|(i, _)| *i == id) => {
                selftest::SelftestReport {
                    seed: cli.seed,
                    lines: vec![selftest::run_check(id, cli.seed, cap)],
                }
            }
            Some(id) => return malformed_output(format!("no self-check numbered {id}")),
        };
        return Output {
            stdout: report.render(),
            stderr: String::new(),
            code: if report.all_passed() { 0 } else { 1 },
        };
    }
    let docs = match Document::parse_many(input) {
        Ok(d) => d,
        Err(e) => return malformed_output(e.to_string()),
    };
    match execute(&cli, cap, &docs) {
        Ok(doc) => Output {
            stdout: doc.print(),
            stderr: String::new(),
            code: 0,
        },
        Err(Failure::Domain(e)) => Output {
            stdout: Document::from_error(&e).print(),
            stderr: format!("error: {e}\n"),
            code: 1,
        },
        Err(Failure::Malformed(msg)) => malformed_output(msg),
    }
}

fn malformed_output(msg: String) -> Output {
    Output {
        stdout: String::new(),
        stderr: format!("malformed input: {msg}\n"),
        code: 2,
    }
}

fn single(docs: &[Document]) -> std::result::Result<&Document, Failure> {
    match docs {
        [d] => Ok(d),
        _ => Err(Failure::Malformed(format!(
            "expected one input document, got {}",
            docs.len()
        ))),
    }
}

fn execute(cli: &Cli, cap: DegreeCap, docs: &[Document]) -> CmdResult {
    match &cli.command {
        Command::Field(cmd) => field_cmd(cmd, cap, docs),
        Command::Moore(cmd) => moore_cmd(cmd, cap, docs, cli.seed),
        Command::Fixed(cmd) => {
            let sigma = single(docs)?.to_semilinear(cap)?;
            Ok(match cmd {
                FixedCmd::Space => Document::from_fixed_space(&fixed_space(&sigma)?),
                FixedCmd::SplittingDegree => Document::SplittingDegree {
                    degree: splitting_degree(&sigma, cap)?,
                },
                FixedCmd::Descend => {
                    Document::from_vector_space_descent(&descend_vector_space(&sigma, cap)?)
                }
            })
        }
        Command::Lang(LangCmd::Solve) => {
            let doc = single(docs)?;
            match doc {
                Document::DualMatrix { .. } => Ok(Document::from_dual_lang_solution(
                    &lang_solve_dual(&doc.to_dual_matrix(cap)?, cap)?,
                )),
                _ => Ok(Document::from_lang_solution(&lang_solve(
                    &doc.to_matrix(cap)?,
                    cap,
                )?)),
            }
        }
        Command::Lang(LangCmd::Report { q, m, n, ring }) => {
            let ring = match ring {
                Ring::Field => CoefficientRing::Field,
                Ring::DualNumbers => CoefficientRing::DualNumbers,
            };
            Ok(Document::BetaReport(beta_surjectivity_report(
                *q, *m, *n, ring, cap,
            )?))
        }
        Command::Module(cmd) => module_cmd(cmd, cap, docs),
        Command::Ideal(IdealCmd::DescendElement) => {
            let f = single(docs)?.to_polynomial(cap)?;
            Ok(Document::from_polynomials(
                &f.field().base_field(),
                &element_descent(&f)?,
            ))
        }
        Command::Ideal(IdealCmd::DescendGraded) => {
            let doc = single(docs)?;
            let ideal = match doc {
                Document::Polynomials { .. } => {
                    let (field, gens) = doc.to_polynomials(cap)?;
                    let nvars = gens.first().map_or(0, |g| g.nvars());
                    GradedIdealTrunc::from_generators(&field, nvars, cli.trunc, &gens)?
                }
                _ => doc.to_ideal(cap)?,
            };
            Ok(Document::from_ideal(&graded_ideal_descent(&ideal)?))
        }
        Command::Picard(PicardCmd::Cokernel(QM { q, m })) => {
            Ok(Document::from_picard(&picard_cokernel(*q, *m)?))
        }
        Command::Picard(PicardCmd::Class) => {
            let u = single(docs)?.to_unit(cap)?;
            Ok(Document::from_unit(&unit_class(&u)?))
        }
        Command::Picard(PicardCmd::MuDemo(QM { q, m })) => {
            let report = mu_power_demo(*q, *m)?;
            Ok(Document::from_mu_report(&report, &Field::from_q(*q, *m)?))
        }
        Command::Selftest { .. } => unreachable!("handled before input is read"),
    }
}

fn field_cmd(cmd: &FieldCmd, cap: DegreeCap, docs: &[Document]) -> CmdResult {
    match cmd {
        FieldCmd::Construct(QM { q, m }) => {
            let (p, k) = crate::field::fp::prime_power(*q)
                .ok_or_else(|| Failure::Malformed(format!("{q} is not a prime power")))?;
            Ok(Document::from_field(&Field::with_cap(p, k, *m, cap)?))
        }
        FieldCmd::Extend { e } => {
            let field = single(docs)?.to_field(cap)?;
            let (_, emb) = field.extend(*e, cap)?;
            Ok(Document::from_embedding(&emb))
        }
        FieldCmd::Embed { into_m } => {
            let x = single(docs)?.to_element(cap)?;
            let field = x.field();
            let target = Field::with_cap(field.p(), field.q_exponent(), *into_m, cap)?;
            let emb = field.embedding_into(&target)?;
            Ok(Document::from_element(&emb.apply(&x)))
        }
    }
}

fn moore_cmd(cmd: &MooreCmd, cap: DegreeCap, docs: &[Document], seed: u64) -> CmdResult {
    match cmd {
        MooreCmd::Matrix => {
            let (field, xs) = single(docs)?.to_elements(cap)?;
            Ok(Document::from_matrix(&moore_matrix(&MooreInput::new(
                &field, xs,
            )?)))
        }
        MooreCmd::Independent => {
            let (field, xs) = single(docs)?.to_elements(cap)?;
            Ok(Document::Boolean {
                value: is_fq_independent(&MooreInput::new(&field, xs)?),
            })
        }
        MooreCmd::DetIdentity {
            q,
            r,
            samples,
            sample_m,
        } => {
            let id = moore_identity_check(*q, *r)?;
            if *samples > 0 {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                moore_identity_sampled(*q, *r, *sample_m, *samples, &mut rng)?;
            }
            Ok(Document::from_moore_identity(&id))
        }
    }
}

fn module_cmd(cmd: &ModuleCmd, cap: DegreeCap, docs: &[Document]) -> CmdResult {
    match cmd {
        ModuleCmd::Check => {
            let module = single(docs)?.to_module(cap)?;
            let violation = check_equivariant(&module).err();
            Ok(Document::EquivarianceReport {
                equivariant: violation.is_none(),
                violation,
            })
        }
        ModuleCmd::Descend => {
            let module = single(docs)?.to_module(cap)?;
            Ok(Document::from_descended_module(&descend_module(
                &module, cap,
            )?))
        }
        ModuleCmd::Hom { mode } => {
            let [a, b] = docs else {
                return Err(Failure::Malformed(format!(
                    "expected two module documents, got {}",
                    docs.len()
                )));
            };
            let (m, n) = (a.to_module(cap)?, b.to_module(cap)?);
            let mode = match mode {
                Mode::Linear => HomMode::Linear,
                Mode::Equivariant => HomMode::Equivariant,
            };
            Ok(Document::from_hom_space(&hom_space(&m, &n, mode, cap)?))
        }
    }
}
