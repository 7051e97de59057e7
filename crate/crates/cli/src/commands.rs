use std::path::Path;
use std::time::Duration;

use grid_realizer::checker::check_realization;
use grid_realizer::complex::{heawood_bound, validate_closed_surface, Triangulation};
use grid_realizer::enumerate::{enumerate_surfaces_with, EnumerationConstraints};
use grid_realizer::search::{
    max_general_position_subset, minimal_extent, realize as run_search, Goal, GridSpec, SearchConfig, SearchOutcome,
    SearchStatus, Strategy,
};
use grid_realizer::RealizationMode;
use serde_json::json;

use crate::io::{self, CoordFile};
use crate::ledger::{self, Ledger, Record};
use crate::{Common, Fail, MeshFormat, SearchArgs, EXIT_LIMIT, EXIT_NEGATIVE, EXIT_OK};

impl SearchArgs {
    pub fn config(&self, mode: RealizationMode, strategy: Strategy, goal: Goal) -> Result<SearchConfig, Fail> {
        if self.workers == 0 {
            return Err(Fail::usage("--workers must be at least 1"));
        }
        let time_limit = match self.time_limit {
            Some(s) if !(s.is_finite() && s >= 0.0) => return Err(Fail::usage("--time-limit must be a non-negative number of seconds")),
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        let mut cfg = SearchConfig::new(mode)
            .strategy(strategy)
            .goal(goal)
            .workers(self.workers)
            .node_limit(self.node_limit)
            .time_limit(time_limit);
        cfg.deterministic = self.deterministic;
        Ok(cfg)
    }

    fn ledger(&self) -> Option<Ledger> {
        (!self.no_ledger).then(|| Ledger::new(ledger::resolve(self.ledger.as_deref())))
    }
}

/// Sends the main result to `--out` or standard output.
fn emit(common: &Common, text: &str) -> Result<(), Fail> {
    match &common.out {
        Some(p) => io::write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data") + "\n"
}

fn grid(extent: i64) -> Result<GridSpec, Fail> {
    GridSpec::new(extent).map_err(|e| Fail::usage(e.to_string()))
}

fn display_name(t: &Triangulation, i: usize) -> String {
    t.name().map(str::to_string).unwrap_or_else(|| format!("#{}", i + 1))
}

pub fn analyze(input: &Path, common: &Common) -> Result<u8, Fail> {
    let all = io::read_triangulations(input, common.format)?;
    let mut all_closed = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (i, t) in all.iter().enumerate() {
        let info = validate_closed_surface(t);
        all_closed &= info.closed;
        let heawood = if info.closed { heawood_bound(info.chi, info.orientable).ok() } else { None };
        let name = display_name(t, i);
        let counts = format!("V={} E={} F={} chi={}", info.vertices, info.edges, info.facets, info.chi);
        if info.closed {
            let kind = if info.orientable { "orientable" } else { "non-orientable" };
            let h = heawood.map(|h| h.to_string()).unwrap_or_else(|| "-".into());
            text.push_str(&format!("{name}: {counts} closed {kind} genus={} heawood={h}\n", info.genus));
        } else {
            text.push_str(&format!(
                "{name}: {counts} not closed ({} bad edges, {} singular vertices, {})\n",
                info.bad_edges.len(),
                info.singular_vertices.len(),
                if info.connected { "connected" } else { "disconnected" }
            ));
        }
        rows.push(json!({
            "name": name,
            "vertices": info.vertices,
            "edges": info.edges,
            "facets": info.facets,
            "chi": info.chi,
            "closed": info.closed,
            "connected": info.connected,
            "orientable": info.closed.then_some(info.orientable),
            "genus": info.closed.then_some(info.genus),
            "heawood": heawood,
        }));
    }
    emit(common, &if common.json { to_json(&rows) } else { text })?;
    Ok(if all_closed { EXIT_OK } else { EXIT_NEGATIVE })
}

pub fn check(tri: &Path, coords: &Path, mode: RealizationMode, common: &Common) -> Result<u8, Fail> {
    let t = io::read_triangulation(tri, common.format)?;
    let e = io::read_coords(coords)?.to_embedding(&t)?;
    let report = check_realization(&t, &e, mode).map_err(|e| Fail::usage(e.to_string()))?;
    let text = if common.json {
        to_json(&report)
    } else {
        let mut s = format!("{} at {mode}\n", if report.valid { "valid" } else { "invalid" });
        let strongest = report.strongest_mode_satisfied.map(|m| m.to_string()).unwrap_or_else(|| "none".into());
        s.push_str(&format!("strongest mode satisfied: {strongest}\n"));
        for v in &report.violations {
            s.push_str(&format!("  {}\n", v.describe(&t)));
        }
        let listed = report.violations.len();
        let total: usize = report.counts.iter().take(mode as usize + 1).sum();
        if total > listed {
            s.push_str(&format!("  ... {} more\n", total - listed));
        }
        s
    };
    emit(common, &text)?;
    Ok(if report.valid { EXIT_OK } else { EXIT_NEGATIVE })
}

fn status_code(s: SearchStatus) -> u8 {
    match s {
        SearchStatus::Realized => EXIT_OK,
        SearchStatus::Unrealizable => EXIT_NEGATIVE,
        SearchStatus::LimitReached => EXIT_LIMIT,
    }
}

fn summary(out: &SearchOutcome) -> String {
    let what = match out.status {
        SearchStatus::Realized => "realized",
        SearchStatus::Unrealizable => "unrealizable",
        SearchStatus::LimitReached => "limit reached",
    };
    let tail = if out.stats.complete {
        format!(", search tree exhausted with {} realizations", out.stats.solutions)
    } else {
        String::new()
    };
    format!(
        "{what} at extent {} ({}): {} nodes, {:.2}s{tail}",
        out.extent,
        out.mode,
        out.stats.nodes_expanded,
        out.stats.elapsed.as_secs_f64(),
    )
}

pub fn realize(
    tri: &Path,
    extent: i64,
    cfg: &SearchConfig,
    off: bool,
    search: &SearchArgs,
    common: &Common,
) -> Result<u8, Fail> {
    if off && common.out.is_none() {
        return Err(Fail::usage("--off needs --out"));
    }
    let t = io::read_triangulation(tri, common.format)?;
    let out = run_search(&t, &grid(extent)?, cfg).map_err(|e| Fail::usage(e.to_string()))?;
    let record = Record::new(&t, &out);
    if let Some(l) = search.ledger() {
        l.append(&record)?;
    }
    if let Some(path) = &common.out {
        match &out.witness {
            Some(w) => {
                io::write_text(path, &CoordFile::from_embedding(&t, w, extent).to_json())?;
                if off {
                    io::write_text(&path.with_extension("off"), &io::to_off(&t, w))?;
                }
            }
            None => io::write_text(path, &to_json(&record))?,
        }
    }
    if common.json {
        print!("{}", to_json(&record));
    } else {
        println!("{}", summary(&out));
        if let (Some(w), None) = (&out.witness, &common.out) {
            print!("{}", CoordFile::from_embedding(&t, w, extent).to_json());
        }
    }
    Ok(status_code(out.status))
}

pub fn bound(tri: &Path, max_extent: i64, cfg: &SearchConfig, search: &SearchArgs, common: &Common) -> Result<u8, Fail> {
    let t = io::read_triangulation(tri, common.format)?;
    grid(max_extent)?;
    let m = minimal_extent(&t, cfg.mode, max_extent, cfg).map_err(|e| Fail::usage(e.to_string()))?;
    if let Some(l) = search.ledger() {
        for o in &m.outcomes {
            l.append(&Record::new(&t, o))?;
        }
    }
    let witness = m.outcomes.last().and_then(|o| o.witness.clone());
    let code = match (m.minimal, m.first_realized) {
        (Some(_), _) => EXIT_OK,
        (None, None) if m.outcomes.iter().all(|o| o.status == SearchStatus::Unrealizable) => EXIT_NEGATIVE,
        _ => EXIT_LIMIT,
    };
    if let (Some(path), Some(w), Some(e)) = (&common.out, &witness, m.first_realized) {
        io::write_text(path, &CoordFile::from_embedding(&t, w, e).to_json())?;
    }
    if common.json {
        print!("{}", to_json(&m));
    } else {
        for o in &m.outcomes {
            println!("{}", summary(o));
        }
        match (m.minimal, m.first_realized) {
            (Some(e), _) => println!("minimal extent {e} ({})", cfg.mode),
            (None, Some(e)) => println!("realized at extent {e}; smaller extents were not exhausted"),
            (None, None) if code == EXIT_NEGATIVE => println!("no realization with extent at most {max_extent}"),
            (None, None) => println!("undecided up to extent {max_extent}"),
        }
    }
    Ok(code)
}

pub fn gpmax(extent: i64, target: Option<usize>, common: &Common) -> Result<u8, Fail> {
    let r = max_general_position_subset(&grid(extent)?, target).map_err(|e| Fail::usage(e.to_string()))?;
    let text = if common.json {
        to_json(&r)
    } else {
        let pts: Vec<String> = r.witness.iter().map(|p| format!("{:?}", p.coords())).collect();
        format!(
            "{} points in general position in {{0..{extent}}}^3{}\n{}\n",
            r.size,
            if r.exhausted { " (maximum)" } else { " (lower bound)" },
            pts.join(" ")
        )
    };
    emit(common, &text)?;
    Ok(EXIT_OK)
}

pub fn enumerate(
    vertices: usize,
    chi: Option<i64>,
    orientable: Option<bool>,
    workers: usize,
    common: &Common,
) -> Result<u8, Fail> {
    let mut c = EnumerationConstraints::new(vertices);
    c.chi = chi;
    c.orientable = orientable;
    let (all, _) = enumerate_surfaces_with(&c, workers.max(1)).map_err(|e| Fail::usage(e.to_string()))?;
    let mut text = String::new();
    for t in &all {
        text.push_str(&if common.json { t.to_json() } else { t.to_lex() });
        text.push('\n');
    }
    emit(common, &text)?;
    eprintln!("{} triangulations", all.len());
    Ok(EXIT_OK)
}

pub fn export(tri: &Path, coords: &Path, to: MeshFormat, common: &Common) -> Result<u8, Fail> {
    let t = io::read_triangulation(tri, common.format)?;
    let e = io::read_coords(coords)?.to_embedding(&t)?;
    let text = match to {
        MeshFormat::Off => io::to_off(&t, &e),
        MeshFormat::Obj => io::to_obj(&t, &e),
    };
    emit(common, &text)?;
    Ok(EXIT_OK)
}

pub fn batch(
    input: &Path,
    extent: i64,
    cfg: &SearchConfig,
    force: bool,
    search: &SearchArgs,
    common: &Common,
) -> Result<u8, Fail> {
    let Some(ledger) = search.ledger() else {
        return Err(Fail::usage("batch keeps its state in the ledger; --no-ledger is not allowed"));
    };
    let g = grid(extent)?;
    let all = io::read_triangulations(input, common.format)?;
    let mut latest = ledger.latest()?;
    let mut text = String::new();
    let mut tally = [0usize; 3];
    for (i, t) in all.iter().enumerate() {
        let key = (ledger::label_of(t), extent, cfg.mode, grid_realizer::VERSION.to_string());
        let (status, cached) = match latest.get(&key) {
            Some(r) if r.is_final() && !force => (r.status, true),
            _ => {
                let out = run_search(t, &g, cfg).map_err(|e| Fail::usage(format!("{}: {e}", display_name(t, i))))?;
                let r = Record::new(t, &out);
                ledger.append(&r)?;
                latest.insert(key, r);
                (out.status, false)
            }
        };
        tally[status_code(status).min(2) as usize] += 1;
        let line = format!("{}: {:?}{}\n", display_name(t, i), status, if cached { " (recorded)" } else { "" });
        if common.out.is_none() {
            print!("{line}");
        }
        text.push_str(&line);
    }
    let (realized, unrealizable, limited) = (tally[0], tally[1], tally[2]);
    let total = format!(
        "{} triangulations: {realized} realized, {unrealizable} unrealizable, {limited} undecided; ledger {}\n",
        all.len(),
        ledger.path().display()
    );
    match &common.out {
        Some(p) => io::write_text(p, &(text + &total))?,
        None => print!("{total}"),
    }
    Ok(if limited > 0 {
        EXIT_LIMIT
    } else if unrealizable > 0 {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    })
}
