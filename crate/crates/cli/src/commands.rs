use std::error::Error;
use std::fs;

use clusterskein_core::cluster::{explore, sweep_sequences};
use clusterskein_core::generators::{count, enumerate_generators, handle_decomposition, Options};
use clusterskein_core::skein::{check_flip_compatibility, square_generators, triangulation_arcs, FlipKind, SquareKind};
use clusterskein_core::{Seed, Triangulation};

use crate::input::{self, Checked, Loaded};
use crate::Source;
use crate::{Command, Out, Status};

type Result<T> = std::result::Result<T, Box<dyn Error>>;

fn load(src: &Source) -> Result<Loaded> {
    Ok(input::load(src.path.as_deref(), src.builtin.as_deref())?)
}

fn seed(l: &Loaded) -> Result<Seed> {
    Ok(Seed::formal(&l.ideal().var_table(), l.tagged.exchange_matrix())?)
}

/// A one-based index or an edge name.
fn edge(t: &Triangulation, token: &str) -> Result<usize> {
    let token = token.trim();
    if let Ok(i) = token.parse::<usize>() {
        if (1..=t.num_edges()).contains(&i) {
            return Ok(i - 1);
        }
        return Err(format!("edge index {i} is out of range 1..={}", t.num_edges()).into());
    }
    t.index_of(token)
        .ok_or_else(|| format!("unknown edge `{token}`").into())
}

pub fn run(cmd: Command, out: &mut Out) -> Result<Status> {
    match cmd {
        Command::Validate(src) => validate(&src, out),
        Command::Matrix(src) => {
            out.line(load(&src)?.tagged.exchange_matrix().to_string());
            Ok(Status::Ok)
        }
        Command::Mutate { source, seq } => mutate(&source, &seq, out),
        Command::Explore {
            source,
            depth,
            max_nodes,
            dot,
        } => {
            let l = load(&source)?;
            let g = explore(&seed(&l)?, depth, max_nodes);
            let yes = |b: bool| if b { "yes" } else { "no" };
            out.line(format!("nodes: {}", g.len()));
            out.line(format!("edges: {}", g.edges().len()));
            out.line(format!("cluster variables: {}", g.cluster_variables().len()));
            out.line(format!("saturated: {}", yes(g.is_saturated())));
            out.line(format!("truncated: {}", yes(g.is_truncated())));
            match dot {
                Some(p) if p.as_os_str() == "-" => out.line(g.to_dot().trim_end()),
                Some(p) => fs::write(&p, g.to_dot()).map_err(|e| format!("cannot write {}: {e}", p.display()))?,
                None => {}
            }
            Ok(Status::Ok)
        }
        Command::LaurentCheck {
            source,
            maxlen,
            no_repeats,
        } => {
            let l = load(&source)?;
            let r = sweep_sequences(&seed(&l)?, maxlen, !no_repeats);
            out.line(format!("sequences: {}", r.sequences));
            out.line(format!(
                "positive coefficients: {}",
                if r.all_positive { "yes" } else { "no" }
            ));
            match r.failure {
                None => {
                    out.line(out.verdict(true));
                    Ok(Status::Ok)
                }
                Some((path, e)) => {
                    let names: Vec<&str> = path.iter().map(|&k| l.ideal().name(k)).collect();
                    out.line(format!(
                        "{} mutating along {}: {e}",
                        out.verdict(false),
                        names.join(",")
                    ));
                    Ok(Status::CheckFailed)
                }
            }
        }
        Command::RhoCheck { source, flip } => {
            let l = load(&source)?;
            let k = edge(l.ideal(), &flip)?;
            let name = l.ideal().name(k);
            let c = check_flip_compatibility(&l.tagged, k)?;
            let kind = match c.kind {
                FlipKind::Quadrilateral => "quadrilateral",
                FlipKind::PuncturedDigon => "punctured digon",
            };
            out.line(format!("flip {name} ({kind})"));
            out.line(format!("rho({name}) rho({name}') = {}", c.lhs));
            out.line(format!("rho(exchange binomial) = {}", c.rhs));
            out.line(format!("rho({name}') = {}", c.flipped));
            out.line(format!("mutated variable = {}", c.mutated));
            out.line(out.verdict(c.passed()));
            Ok(if c.passed() { Status::Ok } else { Status::CheckFailed })
        }
        Command::Generators {
            source,
            counts,
            decorated,
            bullock,
            budget,
            square,
        } => {
            let l = load(&source)?;
            if square {
                return square_list(&l, out);
            }
            let hd = handle_decomposition(l.ideal().surface());
            let list = enumerate_generators(
                &hd,
                &Options {
                    bullock,
                    decorated,
                    budget,
                },
            )?;
            if counts {
                let c = count(&list);
                out.line(format!(
                    "{{\"handles\":{},\"chords\":{},\"loops\":{},\"arcs\":{},\"decorated\":{},\"total\":{}}}",
                    hd.handles,
                    c.chords,
                    c.loops,
                    c.arcs,
                    c.decorated,
                    c.total()
                ));
            } else {
                for d in &list {
                    out.line(d.to_string());
                }
            }
            Ok(Status::Ok)
        }
    }
}

fn validate(src: &Source, out: &mut Out) -> Result<Status> {
    let l = match input::check(src.path.as_deref(), src.builtin.as_deref())? {
        Checked::Valid(l) => l,
        Checked::Invalid(report) => {
            for v in &report.violations {
                out.line(format!("violation: {v}"));
            }
            out.line(out.verdict(false));
            return Ok(Status::CheckFailed);
        }
    };
    let t = l.ideal();
    out.line(t.validate().to_string());
    let notched: Vec<&str> = l
        .tagged
        .notched_punctures()
        .into_iter()
        .map(|p| t.vertex_name(p))
        .collect();
    if !notched.is_empty() {
        out.line(format!("notched at: {}", notched.join(",")));
    }
    let bad = l.tagged.incompatible_pairs(&l.isotopy_pairs);
    for &(i, j) in &bad {
        out.line(format!("incompatible: {} {}", t.name(i), t.name(j)));
    }
    let ok = bad.is_empty() && l.tagged.is_tagged_triangulation(&l.isotopy_pairs);
    out.line(out.verdict(ok));
    Ok(if ok { Status::Ok } else { Status::CheckFailed })
}

fn mutate(src: &Source, seq: &[String], out: &mut Out) -> Result<Status> {
    let l = load(src)?;
    let t = l.ideal();
    let mut s = seed(&l)?;
    for token in seq {
        let k = edge(t, token)?;
        s = s.mutate(k)?;
        out.line(format!("{}' = {}", t.name(k), s.var(k)));
    }
    out.line(s.matrix().to_string());
    Ok(Status::Ok)
}

fn square_list(l: &Loaded, out: &mut Out) -> Result<Status> {
    let t = l.ideal();
    for g in square_generators(t, &triangulation_arcs(t), &l.loops)? {
        let kind = match g.kind {
            SquareKind::Loop => "loop",
            SquareKind::Arc => "arc",
            SquareKind::BoundaryInverse => "boundary-inverse",
            SquareKind::VertexDecorated => "decorated",
        };
        match g.laurent {
            Some(p) => out.line(format!("{kind} {} = {p}", g.label)),
            None => out.line(format!("{kind} {} = {} (vertex class kept formal)", g.label, g.formal)),
        }
    }
    Ok(Status::Ok)
}
