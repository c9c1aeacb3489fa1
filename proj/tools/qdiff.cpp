#include <qdiff/commands.hpp>
#include <qdiff/parse.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

std::vector<qdiff::cplx> parse_points(const std::string &list)
{
    std::vector<qdiff::cplx> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(qdiff::parse_complex(item));
        }
    }
    return out;
}

int fail(const qdiff::Error &e)
{
    std::cerr << qdiff::dump(qdiff::error_json(e));
    return 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Factor, solve and index linear q-difference operators"};
    std::string command;
    std::string expr;
    std::string file;
    std::string q = "2";
    std::string mode = "formal";
    std::string points;
    std::string svg;
    int order = 40;
    double tol = 1e-12;

    app.add_option("command", command, "newton | factor | solve | index | eval")
        ->required()
        ->check(CLI::IsMember({"newton", "factor", "solve", "index", "eval"}));
    app.add_option("expr", expr, "operator, e.g. \"q*z*S^2 - (1+z)*S + 1\"");
    app.add_option("--file", file, "read the operator from a file");
    app.add_option("--q", q, "dilation parameter, |q| > 1 (e.g. 3+0.1i)");
    app.add_option("--order", order, "truncation order");
    app.add_option("--mode", mode, "formal | convergent")->check(CLI::IsMember({"formal", "convergent"}));
    app.add_option("--tol", tol, "coefficient negligibility threshold");
    app.add_option("--points", points, "comma-separated evaluation points (eval)");
    app.add_option("--svg", svg, "write the Newton polygon as SVG (newton)");
    CLI11_PARSE(app, argc, argv);

    try {
        qdiff::CommandOptions opts;
        opts.q = qdiff::parse_complex(q);
        opts.order = order;
        opts.mode = mode == "convergent" ? qdiff::Mode::Convergent : qdiff::Mode::Formal;
        opts.tol = tol;
        opts.points = parse_points(points);
        if (!svg.empty()) {
            opts.svg = svg;
        }
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) {
                throw qdiff::Error(qdiff::ErrorKind::InvalidArgument, "cannot read " + file);
            }
            std::stringstream buf;
            buf << in.rdbuf();
            expr = buf.str();
        }
        if (expr.empty()) {
            throw qdiff::Error(qdiff::ErrorKind::InvalidArgument, "no operator given (EXPR or --file)");
        }
        std::cout << qdiff::dump(qdiff::run_command(command, expr, opts));
    } catch (const qdiff::Error &e) {
        return fail(e);
    }
    return 0;
}
