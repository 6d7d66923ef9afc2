fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(unit_order_lab::cli::parse_and_dispatch(&argv));
}
