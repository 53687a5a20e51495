use std::error::Error as StdError;
use std::io::Write;

use newton_galois::certify::Irreducibility;
use newton_galois::glp::{classify, glp_monic, is_rational_square, ClassifyOptions};
use newton_galois::modp::{frobenius_samples, parity_evidence, CycleType};
use newton_galois::newton::{render_slope, Point};
use newton_galois::{
    certify_large_galois, discriminant, newton_index, newton_polygon, parse_rational, render_rational,
    schur_discriminant, Classification, Error, ExactRational, GlpParams, RationalPolynomial,
};
use rayon::prelude::*;
use serde_json::json;

use crate::{ClassifyArgs, Command, GlpArgs};

type CliResult<T = ()> = Result<T, Box<dyn StdError + Send + Sync>>;

pub fn run(command: Command, out: &mut impl Write) -> CliResult {
    match command {
        Command::Np { poly, prime, json } => np(&poly.poly.parse()?, prime, json, out),
        Command::Index { poly, json } => index(&poly.poly.parse()?, json, out),
        Command::Certify { poly, shifts, shift_bound, assume_irreducible, json } => {
            let shifts = match (shifts, shift_bound) {
                (_, Some(b)) => bounded_shifts(b),
                (Some(csv), None) => parse_shifts(&csv)?,
                (None, None) => vec![ExactRational::from_integer(0.into())],
            };
            certify(&poly.poly.parse()?, &shifts, irreducibility(assume_irreducible), json, out)
        }
        Command::Frobenius { poly, frobenius_samples, json } => {
            frobenius(&poly.poly.parse()?, frobenius_samples, json, out)
        }
        Command::GlpClassify { glp, classify, json } => {
            let c = newton_galois::classify(glp_params(&glp)?, options(&classify))?;
            writeln!(out, "{}", render_classification(&c, json)?)?;
            Ok(())
        }
        Command::GlpDisc { glp, verify_resultant, json } => glp_disc(glp_params(&glp)?, verify_resultant, json, out),
        Command::GlpScan { n_from, n_to, alpha, classify, jobs, json } => {
            glp_scan(n_from, n_to, &parse_rational(&alpha)?, options(&classify), jobs, json, out)
        }
    }
}

fn irreducibility(assumed: bool) -> Irreducibility {
    if assumed {
        Irreducibility::Asserted
    } else {
        Irreducibility::Unknown
    }
}

fn options(args: &ClassifyArgs) -> ClassifyOptions {
    ClassifyOptions {
        irreducibility: irreducibility(args.assume_irreducible),
        frobenius_samples: args.frobenius_samples,
    }
}

fn glp_params(args: &GlpArgs) -> Result<GlpParams, Error> {
    GlpParams::from_alpha(args.n, &parse_rational(&args.alpha)?)
}

fn parse_shifts(csv: &str) -> Result<Vec<ExactRational>, Error> {
    csv.split(',').map(|s| parse_rational(s.trim())).collect()
}

fn bounded_shifts(bound: u64) -> Vec<ExactRational> {
    let mut shifts = vec![ExactRational::from_integer(0.into())];
    for k in 1..=bound as i64 {
        shifts.push(ExactRational::from_integer(k.into()));
        shifts.push(ExactRational::from_integer((-k).into()));
    }
    shifts
}

fn render_points(points: &[Point]) -> String {
    points.iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(" ")
}

fn np(f: &RationalPolynomial, prime: u64, json: bool, out: &mut impl Write) -> CliResult {
    let polygon = newton_polygon(f, prime)?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&polygon)?)?;
        return Ok(());
    }
    writeln!(out, "prime={}", polygon.prime)?;
    for s in &polygon.segments {
        writeln!(
            out,
            "slope={} length={} from=({},{}) to=({},{})",
            render_slope(&s.slope),
            s.length,
            s.from.0,
            s.from.1,
            s.to.0,
            s.to.1
        )?;
    }
    writeln!(out, "vertices: {}", render_points(&polygon.vertices))?;
    writeln!(out, "points: {}", render_points(&polygon.points))?;
    Ok(())
}

fn index(f: &RationalPolynomial, json: bool, out: &mut impl Write) -> CliResult {
    let report = newton_index(f)?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&report)?)?;
        return Ok(());
    }
    writeln!(out, "index={} degree={} x_power={}", report.index, report.degree, report.x_power)?;
    for (p, slopes) in &report.witnesses {
        let slopes: Vec<String> = slopes.iter().map(render_slope).collect();
        writeln!(out, "witness prime={p} slopes=[{}]", slopes.join(","))?;
    }
    Ok(())
}

fn certify(
    f: &RationalPolynomial,
    shifts: &[ExactRational],
    irreducibility: Irreducibility,
    json: bool,
    out: &mut impl Write,
) -> CliResult {
    let cert = certify_large_galois(f, shifts, irreducibility)?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&cert)?)?;
    } else {
        writeln!(out, "{cert}")?;
    }
    Ok(())
}

fn frobenius(f: &RationalPolynomial, count: usize, json: bool, out: &mut impl Write) -> CliResult {
    let samples = frobenius_samples(f, count)?;
    let parity = parity_evidence(&samples)?;
    if json {
        let samples: Vec<_> = samples.iter().map(cycle_json).collect();
        writeln!(out, "{}", json!({ "samples": samples, "parity": parity }))?;
        return Ok(());
    }
    for c in &samples {
        writeln!(out, "{c}")?;
    }
    writeln!(out, "parity={parity}")?;
    Ok(())
}

fn cycle_json(c: &CycleType) -> serde_json::Value {
    json!({ "prime": c.prime, "type": c.degrees, "parity": c.parity() })
}

fn glp_disc(params: GlpParams, verify: bool, json: bool, out: &mut impl Write) -> CliResult {
    let disc = schur_discriminant(params);
    let square = is_rational_square(&disc);
    let verified = if verify { Some(discriminant(&glp_monic(params))? == disc) } else { None };
    if json {
        let mut value = json!({ "discriminant": render_rational(&disc), "square": square });
        if let Some(v) = verified {
            value["verified"] = json!(v);
        }
        writeln!(out, "{value}")?;
    } else {
        match verified {
            Some(v) => writeln!(out, "{} square={square} verified={v}", render_rational(&disc))?,
            None => writeln!(out, "{} square={square}", render_rational(&disc))?,
        }
    }
    if verified == Some(false) {
        return Err(Error::Inconsistent("closed-form discriminant disagrees with the resultant".into()).into());
    }
    Ok(())
}

fn render_classification(c: &Classification, json: bool) -> CliResult<String> {
    if json {
        Ok(serde_json::to_string(c)?)
    } else {
        Ok(c.to_string())
    }
}

fn glp_scan(
    n_from: usize,
    n_to: usize,
    alpha: &ExactRational,
    options: ClassifyOptions,
    jobs: usize,
    json: bool,
    out: &mut impl Write,
) -> CliResult {
    let params = (n_from..=n_to)
        .map(|n| GlpParams::from_alpha(n, alpha))
        .collect::<Result<Vec<_>, _>>()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let chunk = pool.current_num_threads().max(1) * 2;
    for batch in params.chunks(chunk) {
        let results: Vec<_> = pool.install(|| batch.par_iter().map(|&p| classify(p, options)).collect());
        for result in results {
            let line = render_classification(&result?, json)?;
            writeln!(out, "{}", line.replace('\n', " "))?;
        }
        out.flush()?;
    }
    Ok(())
}
