use std::io::Write;
use std::path::Path;

use ladr::approx::{
    approx_with, default_mu, make_schedule, to_f64, verify_solution, ApproxOptions, Objective, ScheduleMode, Sweep,
};
use ladr::gadgets::{
    assignment_to_hitting_set, build_gadget_with, default_epsilon, hitting_set_to_assignment, parse_dimacs,
    random_five_occurrence, validate_formula, Assignment, Formula,
};
use ladr::hitting::{cuhs_witness, exact_uhs, is_separating, optimal_lads_area, optimal_lads_perimeter};
use ladr::lp::{build_layout_lp, Engine, SolveOptions};
use ladr::model::{BBox, RectId};
use ladr::scalar::{format_rational, int};
use ladr::Rational;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::io::{self, Summary, TraceEntry};
use crate::svg::{self, Scene};
use crate::{
    AdjustArgs, Cli, CliError, Command, EngineArg, GadgetArgs, HitsetArgs, ObjectiveArg, RenderArgs, ScheduleArg,
    SweepArg, VerifyArgs,
};

type Outcome = Result<i32, CliError>;

/// Runs one command, writing its main output to `out` unless redirected to a
/// file. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Adjust(args) => adjust(args, cli.lossy, out),
        Command::Verify(args) => verify(args, cli.lossy, out),
        Command::Hitset(args) => hitset(args, cli.lossy, out),
        Command::Gadget(args) => gadget(args, cli.lossy, out),
        Command::Render(args) => render(args, cli.lossy),
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => io::write_text(p, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn bbox_value(b: &BBox<Rational>) -> Value {
    json!({
        "left": format_rational(&b.left),
        "right": format_rational(&b.right),
        "bottom": format_rational(&b.bottom),
        "top": format_rational(&b.top),
        "width": format_rational(&b.width()),
        "height": format_rational(&b.height()),
        "area": format_rational(&b.area()),
        "perimeter": format_rational(&b.perimeter()),
    })
}

fn pair_value(pair: &Option<(RectId, RectId)>) -> Value {
    match pair {
        Some((a, b)) => json!([a.as_str(), b.as_str()]),
        None => Value::Null,
    }
}

fn adjust(args: &AdjustArgs, lossy: bool, out: &mut dyn Write) -> Outcome {
    let instance = io::read_instance(&args.instance, lossy)?;
    let eps = io::rational_arg(&args.eps, lossy)?;
    let mode = match (&args.mu, args.schedule) {
        (Some(mu), _) => ScheduleMode::Geometric(io::rational_arg(mu, lossy)?),
        (None, ScheduleArg::Geometric) => ScheduleMode::Geometric(default_mu(&instance)),
        (None, ScheduleArg::Exact) => ScheduleMode::Exact,
    };
    let schedule = make_schedule(&instance, &mode)?;
    let objective = match args.objective {
        ObjectiveArg::Area => Objective::Area,
        ObjectiveArg::Perimeter => Objective::Perimeter,
    };
    let options = ApproxOptions {
        objective,
        sweep: match args.sweep {
            SweepArg::Frontier => Sweep::Frontier,
            SweepArg::Full => Sweep::Full,
        },
        solver: SolveOptions {
            engine: match args.engine {
                EngineArg::Guided => Engine::FloatGuided,
                EngineArg::Exact => Engine::Exact,
            },
            ..SolveOptions::default()
        },
    };
    let result = approx_with(&instance, &eps, &schedule, &options)?;
    if let Some(path) = &args.dump_lp {
        let (w, h) = result.chosen_wh;
        io::write_text(path, &build_layout_lp(&instance, w, h, &eps)?.model.dump())?;
    }
    let report = verify_solution(&instance, &result.layout)?;
    let b = &report.bbox;
    let summary = Summary {
        area: format_rational(&b.area()),
        perimeter: format_rational(&b.perimeter()),
        width: format_rational(&b.width()),
        height: format_rational(&b.height()),
        area_approx: to_f64(&b.area()),
        perimeter_approx: to_f64(&b.perimeter()),
        chosen_w: result.chosen_wh.0,
        chosen_h: result.chosen_wh.1,
        eps: format_rational(&eps),
        objective: format!("{:?}", objective).to_lowercase(),
        verified: report.is_valid(),
        trace: result.trace.iter().map(|c| TraceEntry { w: c.w, h: c.h, feasible: c.feasible }).collect(),
    };
    eprintln!(
        "cell ({}, {}), area {:.4}, perimeter {:.4}, {} cells probed",
        summary.chosen_w,
        summary.chosen_h,
        summary.area_approx,
        summary.perimeter_approx,
        summary.trace.len()
    );
    emit(&io::layout_json(&instance, &result.layout, Some(summary))?, args.output.as_deref(), out)?;
    Ok(if report.is_valid() { 0 } else { 1 })
}

fn verify(args: &VerifyArgs, lossy: bool, out: &mut dyn Write) -> Outcome {
    let instance = io::read_instance(&args.instance, lossy)?;
    let placed = io::read_rects(&args.layout, lossy, false)?;
    let report = verify_solution(&instance, &placed.layout)?;
    if !report.is_valid() {
        eprintln!("{}", report.describe());
    }
    let doc = json!({
        "disjoint": report.disjoint,
        "order_preserved": report.order_preserved,
        "bbox": bbox_value(&report.bbox),
        "overlapping_pair": pair_value(&report.overlapping_pair),
        "order_violating_pair": pair_value(&report.order_violating_pair),
    });
    emit(&io::to_pretty(&doc), None, out)?;
    Ok(if report.is_valid() { 0 } else { 1 })
}

fn hitset(args: &HitsetArgs, lossy: bool, out: &mut dyn Write) -> Outcome {
    let points = io::read_points(&args.points, lossy)?;
    let cap = args.exact_cap;
    let mut code = 0;
    let doc = if args.exact {
        let lines = exact_uhs(&points, cap)?;
        json!({ "size": lines.len(), "r": lines.r(), "c": lines.c(), "lines": io::lines_value(&lines) })
    } else if let Some(rc) = &args.decide {
        let (r, c) = (rc[0], rc[1]);
        let witness = cuhs_witness(&points, r, c, cap)?;
        json!({
            "r": r,
            "c": c,
            "feasible": witness.is_some(),
            "witness": witness.as_ref().map(io::lines_value),
        })
    } else if args.oracle_area || args.oracle_perimeter {
        let opt = if args.oracle_area { optimal_lads_area(&points, cap)? } else { optimal_lads_perimeter(&points, cap)? };
        json!({ "value": opt.value, "r": opt.r, "c": opt.c, "lines": io::lines_value(&opt.lines) })
    } else {
        let path = args.check.as_ref().expect("clap enforces one mode");
        let lines = io::read_lines(path, lossy)?;
        let unhit = lines.first_unhit(&points)?;
        if unhit.is_some() {
            code = 1;
        }
        json!({ "separating": unhit.is_none(), "unhit": unhit.map(|(a, b)| json!([a, b])) })
    };
    emit(&io::to_pretty(&doc), args.output.as_deref(), out)?;
    Ok(code)
}

fn load_formula(args: &GadgetArgs) -> Result<Formula, CliError> {
    if let Some(n) = args.random_vars {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
        return Ok(random_five_occurrence(n, &mut rng)?);
    }
    let path = args.cnf.as_ref().ok_or_else(|| CliError::Usage("a CNF file or --random-vars is required".into()))?;
    let (n, raw) = parse_dimacs(&io::read_text(path)?)?;
    Ok(validate_formula(n, &raw, args.relaxed_occurrence)?)
}

fn gadget(args: &GadgetArgs, lossy: bool, out: &mut dyn Write) -> Outcome {
    let formula = load_formula(args)?;
    let epsilon = match &args.epsilon {
        Some(text) => io::rational_arg(text, lossy)?,
        None => default_epsilon(formula.m()),
    };
    if epsilon <= int(0) || epsilon.clone() * int(formula.m() as i64) * int(2) >= int(1) {
        return Err(CliError::Usage(format!("epsilon must satisfy 0 < epsilon < 1/(2m), got {}", format_rational(&epsilon))));
    }
    let g = build_gadget_with(&formula, &epsilon);
    if let Some(path) = &args.extract {
        let lines = io::read_lines(path, lossy)?;
        let assignment = hitting_set_to_assignment(&g, &lines)?;
        let doc = json!({
            "assignment": assignment.to_string(),
            "satisfies": formula.is_satisfied_by(&assignment),
            "lines": lines.len(),
            "k": g.k,
        });
        emit(&io::to_pretty(&doc), args.output.as_deref(), out)?;
        return Ok(0);
    }
    let mut doc = json!({
        "points": io::points_value(&g.points),
        "metadata": {
            "n": g.n(),
            "m": g.m(),
            "k": g.k,
            "epsilon": format_rational(&g.epsilon),
            "relaxed_occurrence": formula.relaxed,
            "clauses": formula.clauses.iter().map(|c| c.iter().map(|l| l.to_dimacs()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "groups": g.groups.iter().map(|gr| gr.to_string()).collect::<Vec<_>>(),
        },
    });
    let mut code = 0;
    if let Some(bits) = &args.assignment {
        let assignment = Assignment::parse_bits(bits)?;
        let lines = assignment_to_hitting_set(&g, &assignment)?;
        let separating = is_separating(&lines, &g.points)?;
        if !separating {
            code = 1;
        }
        doc["lines"] = io::lines_value(&lines);
        doc["metadata"]["assignment"] = json!(assignment.to_string());
        doc["metadata"]["separating"] = json!(separating);
        if let Some(path) = &args.lines_out {
            io::write_text(path, &io::to_pretty(&io::lines_value(&lines)))?;
        }
    }
    emit(&io::to_pretty(&doc), args.output.as_deref(), out)?;
    Ok(code)
}

fn render(args: &RenderArgs, lossy: bool) -> Outcome {
    let doc = io::read_value(&args.input)?;
    let mut scene = Scene::default();
    if doc.get("rectangles").is_some() {
        let placed = io::read_rects(&args.input, lossy, true)?;
        let mut edges: Option<BBox<Rational>> = None;
        for rect in placed.rects {
            let c = placed.layout.center(&rect.id)?.clone();
            let (hw, hh) = (int(rect.w as i64) / int(2), int(rect.h as i64) / int(2));
            let r = BBox {
                left: c.x.clone() - hw.clone(),
                right: c.x.clone() + hw,
                bottom: c.y.clone() - hh.clone(),
                top: c.y.clone() + hh,
            };
            edges = Some(match edges {
                None => r,
                Some(b) => BBox {
                    left: b.left.min(r.left),
                    right: b.right.max(r.right),
                    bottom: b.bottom.min(r.bottom),
                    top: b.top.max(r.top),
                },
            });
            scene.rects.push((rect, c));
        }
        scene.bbox = edges;
    } else {
        scene.points = io::read_points(&args.input, lossy)?.points().to_vec();
        if let Some(lines) = io::embedded_lines(&doc, lossy) {
            scene.lines = lines.map_err(|message| CliError::Parse { path: args.input.display().to_string(), message })?;
        }
    }
    if let Some(path) = &args.lines {
        scene.lines = scene.lines.union(&io::read_lines(path, lossy)?);
    }
    io::write_text(&args.output, &svg::render(&scene)?)?;
    Ok(0)
}
