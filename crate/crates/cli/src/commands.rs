use std::error::Error;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use cellcode::decoder::{self, Decoder};
use cellcode::invariants::{certify_inequivalent, dense_profile, rank_profile};
use cellcode::search::{self, EnumerationConstraints, SurfaceTarget};
use cellcode::stabilizer::{
    self, build_code_with_budget, build_punctured_disk_code, check_relations, commutes, planar_two_holes, CssCode,
    PlanarLattice,
};
use cellcode::surface::{catalog, validate, Cellulation};

use crate::{CatalogCmd, CodeCmd, Command, DecodeCmd, PlanarCmd, SearchCmd};

pub type CmdResult<T> = Result<T, Box<dyn Error>>;

/// Payload and human summary of one command, built from the same values.
pub struct CommandResult {
    pub payload: Value,
    pub summary: String,
}

const LATTICE_NAME: &str = "planar_two_holes";

enum Input {
    Surface(Cellulation),
    Lattice(PlanarLattice),
}

fn read_arg(arg: &str) -> CmdResult<Option<String>> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(Some(std::fs::read_to_string(path)?));
    }
    Ok(None)
}

fn resolve(arg: &str) -> CmdResult<Input> {
    if arg == LATTICE_NAME {
        return Ok(Input::Lattice(planar_two_holes()));
    }
    if let Ok(c) = catalog::cellulation(arg) {
        return Ok(Input::Surface(c));
    }
    let Some(text) = read_arg(arg)? else {
        return Err(format!("unknown input '{arg}': not a catalog name or a readable file").into());
    };
    if let Ok(c) = Cellulation::from_json(&text) {
        validate(&c)?;
        return Ok(Input::Surface(c));
    }
    let lattice = PlanarLattice::from_json(&text)?;
    lattice.validate()?;
    Ok(Input::Lattice(lattice))
}

fn surface_arg(arg: &str) -> CmdResult<Cellulation> {
    match resolve(arg)? {
        Input::Surface(c) => Ok(c),
        Input::Lattice(_) => Err(format!("'{arg}' is a planar lattice, not a closed cellulation").into()),
    }
}

fn code_of(arg: &str, budget: u64) -> CmdResult<CssCode> {
    Ok(match resolve(arg)? {
        Input::Surface(c) => build_code_with_budget(&c, budget)?,
        Input::Lattice(l) => build_punctured_disk_code(&l)?,
    })
}

fn ok_word(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "violated"
    }
}

pub fn run(cmd: &Command) -> CmdResult<CommandResult> {
    match cmd {
        Command::Catalog(c) => catalog_cmd(c),
        Command::Code(c) => code_cmd(c),
        Command::Decode(c) => decode_cmd(c),
        Command::Search(c) => search_cmd(c),
        Command::Planar(c) => planar_cmd(c),
    }
}

fn catalog_cmd(cmd: &CatalogCmd) -> CmdResult<CommandResult> {
    match cmd {
        CatalogCmd::List => {
            let mut names: Vec<&str> = catalog::NAMES.to_vec();
            names.push(LATTICE_NAME);
            Ok(CommandResult {
                summary: names.iter().map(|n| format!("{n}\n")).collect(),
                payload: json!({ "entries": names }),
            })
        }
        CatalogCmd::Show { name } => match resolve(name)? {
            Input::Surface(c) => {
                let info = validate(&c)?;
                Ok(CommandResult {
                    summary: format!(
                        "{name}: {} (V={}, E={}, F={}, chi={})\n{}\n",
                        info.surface_name,
                        info.vertices,
                        info.edges,
                        info.faces,
                        info.euler_characteristic,
                        c.to_json()
                    ),
                    payload: json!({ "name": name, "cellulation": c, "surface": info }),
                })
            }
            Input::Lattice(l) => {
                let layout = l.layout();
                Ok(CommandResult {
                    summary: format!(
                        "{name}: {}x{} squares, {} holes, {} qubits\n",
                        l.width,
                        l.height,
                        l.holes.len(),
                        layout.edges.len()
                    ),
                    payload: json!({ "name": name, "lattice": l, "qubits": layout.edges.len() }),
                })
            }
        },
    }
}

fn params_payload(name: &str, code: &CssCode) -> (Value, String) {
    let p = code.parameters();
    let relations = check_relations(code);
    let commuting = commutes(code);
    let payload = json!({
        "name": name,
        "parameters": p.to_string(),
        "n": p.n,
        "k": p.k,
        "d_x": p.d_x,
        "d_z": p.d_z,
        "relations": relations,
        "commuting": commuting,
    });
    let summary = format!(
        "{}\nrelations: {}\ncommuting: {}\n",
        p,
        ok_word(relations),
        ok_word(commuting)
    );
    (payload, summary)
}

fn code_cmd(cmd: &CodeCmd) -> CmdResult<CommandResult> {
    match cmd {
        CodeCmd::Params { input, budget } => {
            let code = code_of(input, budget.coset_budget)?;
            let (payload, summary) = params_payload(input, &code);
            Ok(CommandResult { payload, summary })
        }
        CodeCmd::Stabilizers { input, budget } => {
            let code = code_of(input, budget.coset_budget)?;
            let strings = code.pauli_strings();
            let lines: Vec<&str> = strings.lines().collect();
            Ok(CommandResult {
                payload: json!({
                    "name": input,
                    "n": code.n,
                    "x_stabilizers": code.x_stabilizers.row_count(),
                    "z_stabilizers": code.z_stabilizers.row_count(),
                    "stabilizers": lines,
                }),
                summary: strings,
            })
        }
        CodeCmd::Invariants { input, dense, budget } => {
            let code = code_of(input, budget.coset_budget)?;
            let profile = if *dense {
                dense_profile(&code, &[])?
            } else {
                rank_profile(&code)
            };
            let export = profile.export();
            let mut summary = format!("rank-2 pairs: {}\n", export.rank2_pairs.len());
            for (rank, count) in &export.histogram {
                writeln!(summary, "rank {rank}: {count}")?;
            }
            Ok(CommandResult {
                payload: serde_json::to_value(&export)?,
                summary,
            })
        }
        CodeCmd::Compare { a, b, budget } => {
            let ca = code_of(a, budget.coset_budget)?;
            let cb = code_of(b, budget.coset_budget)?;
            let cert = certify_inequivalent(&ca, &cb)?;
            let summary = match &cert {
                Some(c) => format!(
                    "inequivalent: rank-2 pairs {} vs {}\n",
                    c.rank2_counts[0], c.rank2_counts[1]
                ),
                None => "inconclusive\n".to_string(),
            };
            Ok(CommandResult {
                payload: json!({
                    "a": a,
                    "b": b,
                    "verdict": if cert.is_some() { "inequivalent" } else { "inconclusive" },
                    "certificate": cert,
                }),
                summary,
            })
        }
    }
}

fn decode_cmd(cmd: &DecodeCmd) -> CmdResult<CommandResult> {
    match cmd {
        DecodeCmd::Sweep {
            input,
            p,
            pz,
            trials,
            seed,
            decoder_budget,
            budget,
        } => {
            let pz = pz.clone().unwrap_or_else(|| p.clone());
            if pz.len() != p.len() {
                return Err(format!("--pz has {} values but --p has {}", pz.len(), p.len()).into());
            }
            let code = code_of(input, budget.coset_budget)?;
            let dec = Decoder::with_budget(&code, *decoder_budget);
            let results = p
                .iter()
                .zip(&pz)
                .map(|(&px, &pz)| decoder::monte_carlo(&dec, code.n, px, pz, *trials, *seed))
                .collect::<Result<Vec<_>, _>>()?;
            eprintln!("rng: {}", decoder::RNG_ALGORITHM);
            Ok(CommandResult {
                summary: decoder::to_csv(&results),
                payload: json!({ "name": input, "rng": decoder::RNG_ALGORITHM, "results": results }),
            })
        }
        DecodeCmd::Exhaustive {
            input,
            weight,
            decoder_budget,
            budget,
        } => {
            let code = code_of(input, budget.coset_budget)?;
            let dec = Decoder::with_budget(&code, *decoder_budget);
            let rows = (0..=*weight)
                .map(|w| decoder::exhaustive(&dec, code.n, w))
                .collect::<Result<Vec<_>, _>>()?;
            let mut summary = String::from("weight,patterns,x_failures,z_failures\n");
            for r in &rows {
                writeln!(summary, "{},{},{},{}", r.weight, r.patterns, r.x_failures, r.z_failures)?;
            }
            Ok(CommandResult {
                payload: json!({ "name": input, "weights": rows }),
                summary,
            })
        }
    }
}

fn parse_surface(name: &str) -> CmdResult<SurfaceTarget> {
    Ok(match name {
        "rp2" | "projective-plane" => SurfaceTarget::PROJECTIVE_PLANE,
        "sphere" => SurfaceTarget::SPHERE,
        "torus" => SurfaceTarget::TORUS,
        "klein" | "klein-bottle" => SurfaceTarget::KLEIN_BOTTLE,
        _ => return Err(format!("unknown surface '{name}' (expected rp2, sphere, torus or klein)").into()),
    })
}

fn search_cmd(cmd: &SearchCmd) -> CmdResult<CommandResult> {
    match cmd {
        SearchCmd::Census {
            edges,
            surface,
            min_systole,
            min_dual_systole,
            vertices,
            bigons,
            valence_two,
            survivors_only,
            budget,
        } => {
            let mut constraints = EnumerationConstraints::projective_plane(*edges)
                .with_systoles(*min_systole, *min_dual_systole);
            constraints.surface = parse_surface(surface)?;
            constraints.vertex_count = *vertices;
            constraints.bigon_faces = *bigons;
            constraints.valence_two_vertices = *valence_two;
            if *survivors_only {
                let found: Vec<Cellulation> = search::survivors(&constraints, budget.class_budget)?
                    .iter()
                    .map(|c| c.map().to_cellulation())
                    .collect();
                return Ok(CommandResult {
                    summary: format!("e={edges}: {} survivors\n", found.len()),
                    payload: json!({ "constraints": constraints, "survivors": found }),
                });
            }
            let census = search::enumerate(&constraints, budget.class_budget)?;
            let s = &census.stats;
            Ok(CommandResult {
                summary: format!(
                    "e={}: {} graphs, {} rooted maps, {} classes, {} survivors\n",
                    s.edges, s.graphs, s.rooted_maps, s.classes, s.survivors
                ),
                payload: serde_json::to_value(&census)?,
            })
        }
        SearchCmd::VerifyPaper { include_nine, budget } => {
            let report = search::verify_no_small_codes(*include_nine, budget.class_budget)?;
            let counts: Vec<String> = report
                .censuses
                .iter()
                .map(|c| format!("e={}: {}", c.stats.edges, c.stats.survivors))
                .collect();
            let mut summary = format!("survivors: {}\n", counts.join(", "));
            for c in &report.censuses {
                writeln!(summary, "e={}: {} classes examined", c.stats.edges, c.stats.classes)?;
            }
            Ok(CommandResult {
                payload: serde_json::to_value(&report)?,
                summary,
            })
        }
        SearchCmd::Reconstruct { budget } => {
            let r = search::reconstruct_figures(budget.class_budget)?;
            let summary = format!(
                "fig2: {} candidates{}\n{}\nfig3: {} candidates{}\n{}\n",
                r.fig2_certificate.candidates,
                if r.fig2_certificate.ambiguous { " (ambiguous)" } else { "" },
                r.fig2.to_json(),
                r.fig3_certificate.candidates,
                if r.fig3_certificate.ambiguous { " (ambiguous)" } else { "" },
                r.fig3.to_json(),
            );
            Ok(CommandResult {
                payload: serde_json::to_value(&r)?,
                summary,
            })
        }
    }
}

fn planar_cmd(cmd: &PlanarCmd) -> CmdResult<CommandResult> {
    match cmd {
        PlanarCmd::Puncture { input, face, vertex } => {
            let c = surface_arg(input)?;
            let full = stabilizer::build_code(&c)?;
            let p = stabilizer::puncture(&c, *face, *vertex)?;
            let unchanged = p.code.parameters() == full.parameters()
                && p.code.x_stabilizers.same_row_space(&full.x_stabilizers)
                && p.code.z_stabilizers.same_row_space(&full.z_stabilizers);
            let params = p.code.parameters();
            Ok(CommandResult {
                summary: format!(
                    "{}\ncode unchanged: {}\nremaining surface is a disk: {}\n",
                    params, unchanged, p.planarity.is_disk
                ),
                payload: json!({
                    "name": input,
                    "face": face,
                    "vertex": vertex,
                    "parameters": params.to_string(),
                    "unchanged": unchanged,
                    "planarity": p.planarity,
                }),
            })
        }
        PlanarCmd::Holes { spec } => {
            let text = read_arg(spec)?.unwrap_or_else(|| spec.clone());
            let lattice = PlanarLattice::from_json(&text)?;
            let code = build_punctured_disk_code(&lattice)?;
            let (mut payload, summary) = params_payload("lattice", &code);
            payload["lattice"] = serde_json::to_value(&lattice)?;
            Ok(CommandResult { payload, summary })
        }
    }
}
