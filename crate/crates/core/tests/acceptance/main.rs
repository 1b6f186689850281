mod criteria;

fn main() {
    let outcomes = criteria::run_all();
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {:>2} {} ({:.2} s): {}",
            o.id, o.name, o.seconds, o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
