//! Command-line front end: generator families, group actions, ring
//! homomorphisms, membership oracles, and the verification drivers, with
//! text and JSON output.
//!
//! Exit codes: 0 for computed verdicts (including NOT_MEMBER and invalid
//! certificates), 1 for usage errors, 2 for violated mathematical
//! preconditions.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use symideal_core::actions::{symmetrize, ColumnMap, RowPermutation};
use symideal_core::equivariant::{
    expand_truncated, member_multigraded, member_truncated, stabilization_scan,
    verify_certificate, Ambient, CertificateCheck, EquivariantIdealSpec, GeneratorFamily,
    MembershipCertificate, MembershipVerdict,
};
use symideal_core::error::Error;
use symideal_core::families::{cycle_product, determinant_gen, h_family, tilde_product};
use symideal_core::morphisms::{collapse_columns, lift_canonical, psi_kl, reduce_mod_p, row_truncate};
use symideal_core::obstruction::{
    hk_excluded_spec, nonmembership_hk, obstruction_check, orbit_divisibility_audit,
    vaughanlee_check,
};
use symideal_core::parse_polynomial;
use symideal_core::{CoefficientRing, Polynomial};

#[derive(Parser)]
#[command(name = "symideal", version, about = "Exact equivariant-ideal computations in row-symmetric polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RingOpts {
    /// Coefficient ring: int, rat, or gf
    #[arg(long, default_value = "rat", value_parser = ["int", "rat", "gf"])]
    ring: String,
    /// Prime modulus, required with --ring gf
    #[arg(long)]
    p: Option<u64>,
}

impl RingOpts {
    fn build(&self) -> Result<CoefficientRing, CliError> {
        match self.ring.as_str() {
            "int" => Ok(CoefficientRing::Integers),
            "rat" => Ok(CoefficientRing::Rationals),
            "gf" => {
                let p = self
                    .p
                    .ok_or_else(|| CliError::Usage("--ring gf requires --p".into()))?;
                Ok(CoefficientRing::prime_field(p)?)
            }
            _ => unreachable!("validated by clap"),
        }
    }
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    out: String,
    /// Include wall-clock timings in reports (output is then not
    /// byte-reproducible)
    #[arg(long)]
    timings: bool,
    /// Seed recorded in reports, for reproducing randomized suites
    #[arg(long)]
    seed: Option<u64>,
}

impl OutputOpts {
    fn json(&self) -> bool {
        self.out == "json"
    }
}

#[derive(Args, Clone)]
struct SpecOpts {
    /// Row bound n
    #[arg(long, default_value_t = 2)]
    rows: u16,
    #[command(flatten)]
    ring: RingOpts,
    /// Ambient algebra for the ideal: full, sym, or l2
    #[arg(long, default_value = "sym", value_parser = ["full", "sym", "l2"])]
    ambient: String,
    /// Generator polynomial (repeatable)
    #[arg(long = "gen")]
    generators: Vec<String>,
    /// Append the cycle product of this length as a generator (repeatable)
    #[arg(long = "cycle")]
    cycles: Vec<u32>,
}

impl SpecOpts {
    fn ambient(&self) -> Ambient {
        match self.ambient.as_str() {
            "full" => Ambient::FullRing,
            "sym" => Ambient::SymmetricSubring,
            "l2" => Ambient::L2Subalgebra,
            _ => unreachable!("validated by clap"),
        }
    }

    fn build(&self) -> Result<EquivariantIdealSpec, CliError> {
        let ring = self.ring.build()?;
        let mut generators = Vec::new();
        for text in &self.generators {
            generators.push(parse_polynomial(text, ring, self.rows)?);
        }
        for &k in &self.cycles {
            generators.push(cycle_product(ring, k)?);
        }
        if generators.is_empty() {
            return Err(CliError::Usage(
                "at least one --gen or --cycle is required".into(),
            ));
        }
        Ok(EquivariantIdealSpec::new(
            ring,
            self.rows,
            self.ambient(),
            generators,
        )?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generator family member
    Family {
        #[command(subcommand)]
        which: FamilyCommand,
    },
    /// Apply a row permutation or a column relabeling to a polynomial
    Act {
        #[command(subcommand)]
        which: ActCommand,
    },
    /// Apply the averaging operator (1/n!) sum_tau tau(f)
    Symmetrize {
        #[arg(long, default_value_t = 2)]
        rows: u16,
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Polynomial in the textual grammar
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Apply a ring homomorphism
    Morph {
        #[command(subcommand)]
        which: MorphCommand,
    },
    /// Truncated ideal membership (Groebner / component-span path)
    Member {
        #[command(flatten)]
        spec: SpecOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Truncation width (largest admitted column)
        #[arg(long, default_value_t = 3)]
        width: u32,
        /// Cofactor total-degree bound
        #[arg(long = "deg", default_value_t = 4)]
        degree: u32,
        /// Write the certificate JSON to this file on MEMBER
        #[arg(long)]
        cert_out: Option<String>,
        /// Target polynomial
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// Exact multigraded ideal membership for multihomogeneous targets
    MemberMg {
        #[command(flatten)]
        spec: SpecOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Write the certificate JSON to this file on MEMBER
        #[arg(long)]
        cert_out: Option<String>,
        /// Target polynomial
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// Test each family member against all smaller ones
    Scan {
        /// Family to walk: h or cycle
        #[arg(long, default_value = "h", value_parser = ["h", "cycle"])]
        family: String,
        #[arg(long, default_value_t = 2)]
        rows: u16,
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// First index
        #[arg(long, default_value_t = 2)]
        from: u32,
        /// Last index
        #[arg(long, default_value_t = 4)]
        to: u32,
    },
    /// Verify that h_k avoids the ideal of the other h_l (p <= n regime)
    VerifyHk {
        #[arg(long, default_value_t = 2)]
        rows: u16,
        /// Field characteristic (prime, at most the row bound)
        #[arg(long)]
        p: u32,
        /// Target index
        #[arg(long)]
        k: u32,
        /// Generator cutoff (defaults to k)
        #[arg(long)]
        kmax: Option<u32>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the valuation obstruction on a candidate certificate file
    VerifyEta {
        /// Field characteristic (prime)
        #[arg(long)]
        p: u32,
        /// Target index
        #[arg(long)]
        k: u32,
        /// Generator cutoff (defaults to k)
        #[arg(long)]
        kmax: Option<u32>,
        /// Candidate certificate JSON file
        #[arg(long)]
        cert: String,
        /// Absorb the mod-p residual into the integer slot, synthesizing an
        /// exact identity that exhibits the p^2 contradiction
        #[arg(long)]
        synthetic: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Exhaustively audit the orbit-size divisibility lemma
    VerifyOrbits {
        /// Row count and characteristic (2, 3, or 5)
        #[arg(long)]
        p: u32,
        /// Largest admitted column
        #[arg(long)]
        width: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Verify that a cycle product avoids the ideal of the other cycles
    VerifyVl {
        /// Target cycle length (3..=5)
        #[arg(long)]
        k: u32,
        /// Generator cutoff (defaults to 5)
        #[arg(long)]
        kmax: Option<u32>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Re-verify a certificate file against a generator spec
    VerifyCert {
        #[command(flatten)]
        spec: SpecOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Certificate JSON file
        #[arg(long)]
        cert: String,
    },
    /// Expand the generator orbit at a finite width
    Expand {
        #[command(flatten)]
        spec: SpecOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Truncation width
        #[arg(long, default_value_t = 3)]
        width: u32,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// h_k: the sum over rows of the product of the first k columns
    H {
        #[arg(long, default_value_t = 2)]
        rows: u16,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Determinant on the given columns of the variable matrix
    Det {
        #[arg(long, default_value_t = 2)]
        rows: u16,
        /// Comma-separated column indices, e.g. 1,2
        #[arg(long, value_delimiter = ',')]
        cols: Vec<u32>,
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Cycle product d_12 d_23 ... d_(k-1)k d_1k (two rows)
    Cycle {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Product over rows of a single-row template in t-variables
    Tilde {
        #[arg(long, default_value_t = 2)]
        rows: u16,
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Template polynomial in t[j]
        #[arg(allow_hyphen_values = true)]
        template: String,
    },
}

#[derive(Subcommand)]
enum ActCommand {
    /// Row permutation x[i,j] -> x[perm(i),j]
    Row {
        /// One-line permutation, e.g. [2,1,3]
        #[arg(long)]
        perm: String,
        #[arg(long, default_value_t = 2)]
        rows: u16,
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        output: OutputOpts,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Column relabeling x[i,j] -> x[i,map(j)]
    Col {
        /// Column map, e.g. {1->3,2->1}
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 2)]
        rows: u16,
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        output: OutputOpts,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Subcommand)]
enum MorphCommand {
    /// Row truncation: kill rows above the target count
    PsiRow {
        #[arg(long, default_value_t = 2)]
        rows: u16,
        /// Target row count
        #[arg(long)]
        to_rows: u16,
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        output: OutputOpts,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Reduce integer coefficients mod p
    Mu {
        #[arg(long, default_value_t = 2)]
        rows: u16,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        output: OutputOpts,
        /// Polynomial over the integers
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Lift prime-field coefficients to representatives in 0..p
    Lift {
        #[arg(long, default_value_t = 2)]
        rows: u16,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        output: OutputOpts,
        /// Polynomial over GF(p)
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Column collapse x[i,j] -> t[j] over the integers
    Eta {
        #[arg(long, default_value_t = 2)]
        rows: u16,
        #[command(flatten)]
        output: OutputOpts,
        /// Polynomial over the integers
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Column-doubling endomorphism x[i,l] -> x[i,k]*x[i,l]
    PsiKl {
        #[arg(long, default_value_t = 2)]
        rows: u16,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[command(flatten)]
        ring: RingOpts,
        #[command(flatten)]
        output: OutputOpts,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
}

/// CLI-level failure, split by exit code class.
enum CliError {
    /// Bad arguments or unreadable inputs: exit 1.
    Usage(String),
    /// Well-formed input rejected by a mathematical precondition: exit 2.
    Math(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::CertificateFormat(_)
            | Error::NotPrime(_)
            | Error::ModulusOutOfRange(_)
            | Error::ZeroIndex
            | Error::RowOutOfBounds { .. }
            | Error::RowBoundOutOfRange(_)
            | Error::RowBoundMismatch(_, _)
            | Error::RingMismatch(_, _)
            | Error::MixedKinds
            | Error::WrongColumnCount { .. }
            | Error::NotAPermutation(_, _)
            | Error::PermutationSizeMismatch { .. }
            | Error::GeneratorIndexOutOfRange { .. }
            | Error::EmptyGenerators => CliError::Usage(e.to_string()),
            other => CliError::Math(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit_polynomial(p: &Polynomial, output: &OutputOpts) {
    if output.json() {
        println!("{}", json!({ "polynomial": p.to_string() }));
    } else {
        println!("{p}");
    }
}

/// Assemble the shared report envelope.
fn report(
    theorem: &str,
    params: Value,
    verdict: &str,
    valuations: Vec<Value>,
    extra: Vec<(&str, Value)>,
    output: &OutputOpts,
    started: Instant,
) -> Value {
    let mut doc = json!({
        "theorem": theorem,
        "params": params,
        "verdict": verdict,
        "valuations": valuations,
    });
    for (key, value) in extra {
        doc[key] = value;
    }
    if let Some(seed) = output.seed {
        doc["seed"] = json!(seed);
    }
    if output.timings {
        doc["runtime_ms"] = json!(started.elapsed().as_millis() as u64);
    }
    doc
}

fn print_verdict(
    verdict: &MembershipVerdict,
    output: &OutputOpts,
    cert_out: Option<&str>,
    started: Instant,
) -> Result<(), CliError> {
    if let (Some(path), Some(cert)) = (cert_out, verdict.certificate()) {
        fs::write(path, serde_json::to_string_pretty(&cert.to_json()).unwrap())
            .map_err(|e| CliError::Usage(format!("cannot write {path}: {e}")))?;
    }
    if output.json() {
        let mut doc = json!({
            "verdict": verdict.status_str(),
            "oracle": verdict.oracle.to_string(),
            "width": verdict.width,
            "degree_bound": verdict.degree_bound,
            "certificate": verdict.certificate().map(|c| c.to_json()),
        });
        if let Some(seed) = output.seed {
            doc["seed"] = json!(seed);
        }
        if output.timings {
            doc["runtime_ms"] = json!(started.elapsed().as_millis() as u64);
        }
        println!("{doc}");
    } else {
        println!("verdict: {}", verdict.status_str());
        println!("oracle: {}", verdict.oracle);
        if let Some(cert) = verdict.certificate() {
            println!("certificate terms: {}", cert.terms().len());
            for term in cert.terms() {
                println!("  sigma {} gen {} cofactor {}", term.sigma, term.generator, term.cofactor);
            }
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Family { which } => match which {
            FamilyCommand::H { rows, k, ring, output } => {
                let f = h_family(ring.build()?, rows, k)?;
                emit_polynomial(&f, &output);
                Ok(())
            }
            FamilyCommand::Det { rows, cols, ring, output } => {
                let f = determinant_gen(ring.build()?, rows, &cols)?;
                emit_polynomial(&f, &output);
                Ok(())
            }
            FamilyCommand::Cycle { k, ring, output } => {
                let f = cycle_product(ring.build()?, k)?;
                emit_polynomial(&f, &output);
                Ok(())
            }
            FamilyCommand::Tilde { rows, ring, output, template } => {
                let ring = ring.build()?;
                let template = parse_polynomial(&template, ring, rows)?;
                let f = tilde_product(rows, &template)?;
                emit_polynomial(&f, &output);
                Ok(())
            }
        },
        Command::Act { which } => match which {
            ActCommand::Row { perm, rows, ring, output, poly } => {
                let tau = RowPermutation::parse(&perm)?;
                let f = parse_polynomial(&poly, ring.build()?, rows)?;
                emit_polynomial(&tau.apply(&f)?, &output);
                Ok(())
            }
            ActCommand::Col { map, rows, ring, output, poly } => {
                let sigma = ColumnMap::parse(&map)?;
                let f = parse_polynomial(&poly, ring.build()?, rows)?;
                emit_polynomial(&sigma.apply(&f)?, &output);
                Ok(())
            }
        },
        Command::Symmetrize { rows, ring, output, poly } => {
            let f = parse_polynomial(&poly, ring.build()?, rows)?;
            emit_polynomial(&symmetrize(&f)?, &output);
            Ok(())
        }
        Command::Morph { which } => match which {
            MorphCommand::PsiRow { rows, to_rows, ring, output, poly } => {
                let f = parse_polynomial(&poly, ring.build()?, rows)?;
                emit_polynomial(&row_truncate(&f, to_rows)?, &output);
                Ok(())
            }
            MorphCommand::Mu { rows, p, output, poly } => {
                let f = parse_polynomial(&poly, CoefficientRing::Integers, rows)?;
                emit_polynomial(&reduce_mod_p(&f, p)?, &output);
                Ok(())
            }
            MorphCommand::Lift { rows, p, output, poly } => {
                let ring = CoefficientRing::prime_field(p)?;
                let f = parse_polynomial(&poly, ring, rows)?;
                emit_polynomial(&lift_canonical(&f)?, &output);
                Ok(())
            }
            MorphCommand::Eta { rows, output, poly } => {
                let f = parse_polynomial(&poly, CoefficientRing::Integers, rows)?;
                emit_polynomial(&collapse_columns(&f)?, &output);
                Ok(())
            }
            MorphCommand::PsiKl { rows, k, l, ring, output, poly } => {
                let f = parse_polynomial(&poly, ring.build()?, rows)?;
                emit_polynomial(&psi_kl(&f, k, l)?, &output);
                Ok(())
            }
        },
        Command::Member { spec, output, width, degree, cert_out, target } => {
            let started = Instant::now();
            let built = spec.build()?;
            let target = parse_polynomial(&target, built.ring(), built.rows())?;
            let verdict = member_truncated(&target, &built, width, degree)?;
            print_verdict(&verdict, &output, cert_out.as_deref(), started)
        }
        Command::MemberMg { spec, output, cert_out, target } => {
            let started = Instant::now();
            let built = spec.build()?;
            let target = parse_polynomial(&target, built.ring(), built.rows())?;
            let verdict = member_multigraded(&target, &built)?;
            print_verdict(&verdict, &output, cert_out.as_deref(), started)
        }
        Command::Scan { family, rows, ring, output, from, to } => {
            let ring = ring.build()?;
            let family = match family.as_str() {
                "h" => GeneratorFamily::H { rows },
                "cycle" => GeneratorFamily::Cycle,
                _ => unreachable!("validated by clap"),
            };
            if to < from {
                return Err(CliError::Usage("--to must be at least --from".into()));
            }
            let report = stabilization_scan(ring, family, from..=to)?;
            if output.json() {
                println!("{}", report.to_json(output.timings));
            } else {
                for e in &report.entries {
                    println!(
                        "k={}: {} (certificate terms: {})",
                        e.k,
                        e.verdict.status_str(),
                        e.certificate_terms
                    );
                }
            }
            Ok(())
        }
        Command::VerifyHk { rows, p, k, kmax, output } => {
            let started = Instant::now();
            let kmax = kmax.unwrap_or(k);
            let verdict = nonmembership_hk(rows, p, k, kmax)?;
            if output.json() {
                let doc = report(
                    "7",
                    json!({"n": rows, "p": p, "k": k, "kmax": kmax}),
                    verdict.status_str(),
                    vec![],
                    vec![("oracle", json!(verdict.oracle.to_string()))],
                    &output,
                    started,
                );
                println!("{doc}");
            } else {
                println!(
                    "h_{k} against {{h_l : l <= {kmax}, l != {k}}} over GF({p}) at {p} rows: {}",
                    verdict.status_str()
                );
            }
            Ok(())
        }
        Command::VerifyEta { p, k, kmax, cert, synthetic, output } => {
            let started = Instant::now();
            let kmax = kmax.unwrap_or(k);
            let spec = hk_excluded_spec(p as u16, p, k, kmax)?;
            let text = fs::read_to_string(&cert)
                .map_err(|e| CliError::Usage(format!("cannot read {cert}: {e}")))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{cert} is not valid JSON: {e}")))?;
            let candidate = MembershipCertificate::from_json(&value, spec.ring(), spec.rows())?;
            let result = obstruction_check(k, p, &spec, &candidate, synthetic)?;
            if output.json() {
                let mut valuations = vec![json!(result.lhs_valuation)];
                valuations.extend(result.term_valuations.iter().map(|v| json!(v)));
                let doc = report(
                    "7",
                    json!({"p": p, "k": k, "kmax": kmax, "synthetic": synthetic}),
                    result.conclusion.as_str(),
                    valuations,
                    vec![("report", result.to_json())],
                    &output,
                    started,
                );
                println!("{doc}");
            } else {
                println!("conclusion: {}", result.conclusion.as_str());
                println!("lhs valuation: {}", result.lhs_valuation);
                println!("term valuations: {:?}", result.term_valuations);
                if let Some(v) = result.residual_slot_valuation {
                    println!("residual slot valuation: {v}");
                }
                if !result.residual_mod_p.is_zero() {
                    println!("residual mod p: {}", result.residual_mod_p);
                }
            }
            Ok(())
        }
        Command::VerifyOrbits { p, width, output } => {
            let started = Instant::now();
            let audit = orbit_divisibility_audit(p, width)?;
            if output.json() {
                let doc = report(
                    "7",
                    json!({"p": p, "width": width}),
                    if audit.passed() { "pass" } else { "fail" },
                    vec![json!(audit.min_eta_valuation)],
                    vec![("report", audit.to_json())],
                    &output,
                    started,
                );
                println!("{doc}");
            } else {
                println!(
                    "audited {} monomials: orbit sizes {:?}, min collapsed valuation {}: {}",
                    audit.monomials_checked,
                    audit.orbit_size_counts,
                    audit.min_eta_valuation,
                    if audit.passed() { "pass" } else { "fail" }
                );
            }
            Ok(())
        }
        Command::VerifyVl { k, kmax, output } => {
            let started = Instant::now();
            let kmax = kmax.unwrap_or(5);
            let verdict = vaughanlee_check(k, kmax)?;
            if output.json() {
                let doc = report(
                    "3",
                    json!({"k": k, "kmax": kmax}),
                    verdict.status_str(),
                    vec![],
                    vec![("oracle", json!(verdict.oracle.to_string()))],
                    &output,
                    started,
                );
                println!("{doc}");
            } else {
                println!(
                    "cycle product {k} against the other cycle products over GF(2): {}",
                    verdict.status_str()
                );
            }
            Ok(())
        }
        Command::VerifyCert { spec, output, cert } => {
            let built = spec.build()?;
            let text = fs::read_to_string(&cert)
                .map_err(|e| CliError::Usage(format!("cannot read {cert}: {e}")))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{cert} is not valid JSON: {e}")))?;
            let loaded = MembershipCertificate::from_json(&value, built.ring(), built.rows())?;
            match verify_certificate(&loaded, &built) {
                CertificateCheck::Valid => {
                    if output.json() {
                        println!("{}", json!({"verdict": "valid"}));
                    } else {
                        println!("verdict: valid");
                    }
                }
                CertificateCheck::Invalid { diagnostic } => {
                    if output.json() {
                        println!("{}", json!({"verdict": "invalid", "diagnostic": diagnostic}));
                    } else {
                        println!("verdict: invalid");
                        println!("diagnostic: {diagnostic}");
                    }
                }
            }
            Ok(())
        }
        Command::Expand { spec, output, width } => {
            let built = spec.build()?;
            let expanded = expand_truncated(&built, width)?;
            if output.json() {
                println!(
                    "{}",
                    json!({"width": width, "generators": expanded.iter().map(|p| p.to_string()).collect::<Vec<_>>()})
                );
            } else {
                for p in &expanded {
                    println!("{p}");
                }
            }
            Ok(())
        }
    }
}
