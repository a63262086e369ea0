//! Rendering of single-point evaluations.

use std::fmt::Write as _;
use std::io::Write;

use crate::error::Result;
use crate::evaluate::Evaluation;

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "unbounded".to_string(), |v| v.to_string())
}

pub fn text(ev: &Evaluation) -> String {
    let o = &ev.opsc;
    let b = &ev.bounds;
    let mut s = String::new();
    let _ = writeln!(s, "perfect secrecy:      {}", ev.perfect_secrecy);
    match ev.max_secrecy_rate_bits {
        Some(r) => {
            let _ = writeln!(s, "max secrecy rate:     {r} bits");
        }
        None => {
            let _ = writeln!(s, "max secrecy rate:     none (eavesdropper SNR unbounded)");
        }
    }
    let _ = writeln!(s, "rate:                 {} bits", ev.rate_bits);
    let _ = writeln!(s, "OPSC:                 {}", o.probability);
    let _ = writeln!(s, "  method:             {}", o.method);
    let _ = writeln!(s, "  exact zero:         {}", o.exact_zero);
    if o.method == "monte_carlo" {
        let _ = writeln!(s, "  std error:          {}", o.std_error);
        let _ = writeln!(s, "  events / trials:    {} / {}", o.events, o.trials);
        let _ = writeln!(s, "  95% upper bound:    {}", o.upper_bound_95);
    } else {
        let _ = writeln!(s, "  nodes:              {}", o.samples_or_nodes);
    }
    if let Some(reason) = &o.fallback_reason {
        let _ = writeln!(s, "  closed form skipped: {reason}");
    }
    let _ = writeln!(s, "throughput:           {} bits ({})", ev.throughput_bits, ev.throughput_method);
    let _ = writeln!(s, "Bob SNR range:        [{}, {}]", b.snr_bob_min, opt(b.snr_bob_max));
    let _ = writeln!(s, "Eve SNR range:        [{}, {}]", b.snr_eve_min, opt(b.snr_eve_max));
    let _ = writeln!(s, "Bob floor:            {}", b.bob_floor);
    let _ = writeln!(s, "gamma_eq max:         {}", opt(b.gamma_eq_max));
    s
}

pub fn write_json<W: Write>(ev: &Evaluation, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, ev)?;
    writeln!(out)?;
    Ok(())
}

/// Two-column `quantity,value` table; unbounded values are empty.
pub fn write_csv<W: Write>(ev: &Evaluation, out: W) -> Result<()> {
    let o = &ev.opsc;
    let b = &ev.bounds;
    let num = |x: f64| x.to_string();
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    let rows: Vec<(&str, String)> = vec![
        ("perfect_secrecy", ev.perfect_secrecy.to_string()),
        ("max_secrecy_rate_bits", opt(ev.max_secrecy_rate_bits)),
        ("rate_bits", num(ev.rate_bits)),
        ("opsc_probability", num(o.probability)),
        ("method", o.method.to_string()),
        ("std_error_probability", num(o.std_error)),
        ("exact_zero", o.exact_zero.to_string()),
        ("events", o.events.to_string()),
        ("trials", o.trials.to_string()),
        ("upper_bound_95_probability", num(o.upper_bound_95)),
        ("throughput_bits", num(ev.throughput_bits)),
        ("snr_bob_min_linear", num(b.snr_bob_min)),
        ("snr_bob_max_linear", opt(b.snr_bob_max)),
        ("snr_eve_min_linear", num(b.snr_eve_min)),
        ("snr_eve_max_linear", opt(b.snr_eve_max)),
        ("bob_floor_linear", num(b.bob_floor)),
        ("gamma_eq_max_linear", opt(b.gamma_eq_max)),
    ];
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["quantity", "value"])?;
    for (k, v) in rows {
        w.write_record([k, v.as_str()])?;
    }
    w.flush()?;
    Ok(())
}
