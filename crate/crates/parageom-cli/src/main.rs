fn main() {
    eprintln!("parageom: command set under construction");
    std::process::exit(2);
}
