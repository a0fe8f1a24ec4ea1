// timing probe for medium suites
use incidence::verify::*;
use std::time::Instant;
fn main() {
    let ctx = VerifyCtx::new();
    for (name, f) in [
        ("threeway p=2 d<=25", Box::new(|| suite_threeway(&ctx, 2, 25)) as Box<dyn Fn() -> SuiteReport>),
        ("threeway p=3 d<=25", Box::new(|| suite_threeway(&ctx, 3, 25))),
        ("tiles", Box::new(|| suite_tiles())),
        ("gao d<=15", Box::new(|| suite_gao_form(&ctx, 15, Default::default()))),
        ("vanishing sum<=14", Box::new(|| suite_conj_vanishing(&ctx, 14))),
    ] {
        let t = Instant::now();
        let rep = f();
        println!("{name}: passed={} in {:?}", rep.passed(), t.elapsed());
        if !rep.passed() { print!("{}", rep.render_text()); }
    }
}
