#include "dms/profiles.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace dms
{

std::string_view to_string(MetricKind kind)
{
    switch (kind)
    {
    case MetricKind::Purity:
        return "purity";
    case MetricKind::Hypervolume:
        return "hypervolume";
    case MetricKind::Gamma:
        return "gamma";
    case MetricKind::Delta:
        return "delta";
    }
    return "unknown";
}

MetricKind parse_metric_kind(std::string_view name)
{
    for (auto kind : kAllMetrics)
    {
        if (name == to_string(kind))
        {
            return kind;
        }
    }
    throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

void ProfileTable::validate() const
{
    if (values.rows() != static_cast<Index>(problems.size()) ||
        values.cols() != static_cast<Index>(solvers.size()))
    {
        throw DimensionError("ProfileTable: value matrix does not match id lists");
    }
}

ProfileTable invert_for_profile(const ProfileTable& table, MetricKind kind)
{
    table.validate();
    if (kind == MetricKind::Gamma || kind == MetricKind::Delta)
    {
        return table;
    }
    ProfileTable out = table;
    out.values = table.values.unaryExpr([](double v) {
        return (is_failure(v) || v == 0.0) ? kMetricFailure : 1.0 / v;
    });
    return out;
}

double ProfileCurve::rho(double tau) const
{
    double value = 0.0;
    for (const auto& [t, r] : breakpoints)
    {
        if (t > tau)
        {
            break;
        }
        value = r;
    }
    return value;
}

std::vector<ProfileCurve> compute_profiles(const ProfileTable& table)
{
    table.validate();
    if (table.values.size() == 0)
    {
        throw std::invalid_argument("compute_profiles: empty table");
    }

    const Index np = table.values.rows();
    const Index ns = table.values.cols();
    std::vector<std::vector<double>> ratios(static_cast<std::size_t>(ns));
    Index counted = 0;

    for (Index i = 0; i < np; ++i)
    {
        double best = std::numeric_limits<double>::infinity();
        for (Index s = 0; s < ns; ++s)
        {
            if (!is_failure(table.values(i, s)))
            {
                best = std::min(best, table.values(i, s));
            }
        }
        if (best == std::numeric_limits<double>::infinity())
        {
            continue; // every solver failed on this problem
        }
        ++counted;
        for (Index s = 0; s < ns; ++s)
        {
            const double t = table.values(i, s);
            if (is_failure(t))
            {
                continue;
            }
            // Cells below the floor would otherwise get ratios under 1.
            const double r = (t == best) ? 1.0 : std::max(1.0, t / std::max(best, kRatioFloor));
            ratios[static_cast<std::size_t>(s)].push_back(r);
        }
    }
    if (counted == 0)
    {
        throw std::invalid_argument("compute_profiles: every cell failed");
    }

    std::vector<ProfileCurve> curves;
    for (Index s = 0; s < ns; ++s)
    {
        auto& r = ratios[static_cast<std::size_t>(s)];
        std::sort(r.begin(), r.end());
        ProfileCurve curve;
        curve.solver = table.solvers[static_cast<std::size_t>(s)];
        std::size_t k = 0;
        // Every curve starts at tau = 1.
        while (k < r.size() && r[k] <= 1.0)
        {
            ++k;
        }
        curve.breakpoints.emplace_back(1.0, static_cast<double>(k) / counted);
        while (k < r.size())
        {
            const double tau = r[k];
            while (k < r.size() && r[k] == tau)
            {
                ++k;
            }
            curve.breakpoints.emplace_back(tau, static_cast<double>(k) / counted);
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

void write_breakpoints(std::ostream& os, const std::vector<ProfileCurve>& curves)
{
    os << "# solver tau rho (ratios use a row-minimum floor of 1e-12)\n";
    for (const auto& c : curves)
    {
        for (const auto& [tau, rho] : c.breakpoints)
        {
            os << c.solver << ' ' << format_real(tau) << ' ' << format_real(rho) << '\n';
        }
    }
}

std::vector<ProfileCurve> read_breakpoints(std::istream& is)
{
    std::vector<ProfileCurve> curves;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (line.empty() || line[0] == '#')
        {
            continue;
        }
        std::istringstream ls(line);
        std::string solver, tau_s, rho_s, extra;
        if (!(ls >> solver >> tau_s >> rho_s) || (ls >> extra))
        {
            throw ParseError("expected '<solver> <tau> <rho>'", lineno);
        }
        double tau = 0.0, rho = 0.0;
        try
        {
            tau = std::stod(tau_s);
            rho = std::stod(rho_s);
        }
        catch (const std::exception&)
        {
            throw ParseError("invalid number", lineno);
        }
        if (curves.empty() || curves.back().solver != solver)
        {
            curves.push_back({solver, {}});
        }
        curves.back().breakpoints.emplace_back(tau, rho);
    }
    return curves;
}

namespace
{

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

} // namespace

void write_profile_svg(std::ostream& os, const std::vector<ProfileCurve>& curves,
                       const std::string& title, double tau_max)
{
    if (curves.empty())
    {
        throw std::invalid_argument("write_profile_svg: no curves");
    }
    if (!(tau_max > 1.0))
    {
        throw std::invalid_argument("write_profile_svg: tau_max must exceed 1");
    }
    constexpr double W = 640, H = 420, left = 60, right = 20, top = 40, bottom = 50;
    const double pw = W - left - right;
    const double ph = H - top - bottom;
    auto sx = [&](double tau) { return left + pw * (std::min(tau, tau_max) - 1.0) / (tau_max - 1.0); };
    auto sy = [&](double rho) { return top + ph * (1.0 - rho); };
    auto num = [](double v) {
        std::ostringstream s;
        s.precision(6);
        s << v;
        return s.str();
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"16\">" << xml_escape(title) << "</text>\n";

    // axes and ticks
    os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\"/>\n</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int i = 0; i <= 5; ++i)
    {
        const double rho = i / 5.0;
        os << "<text x=\"" << left - 6 << "\" y=\"" << num(sy(rho) + 4)
           << "\" text-anchor=\"end\">" << num(rho) << "</text>\n";
        os << "<line x1=\"" << left << "\" y1=\"" << num(sy(rho)) << "\" x2=\"" << left + pw
           << "\" y2=\"" << num(sy(rho)) << "\" stroke=\"#dddddd\"/>\n";
    }
    for (int i = 0; i <= 9; ++i)
    {
        const double tau = 1.0 + (tau_max - 1.0) * i / 9.0;
        os << "<text x=\"" << num(sx(tau)) << "\" y=\"" << top + ph + 16
           << "\" text-anchor=\"middle\">" << num(tau) << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 10
       << "\" text-anchor=\"middle\">tau</text>\n";
    os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 16 "
       << top + ph / 2 << ")\" text-anchor=\"middle\">rho(tau)</text>\n";
    os << "</g>\n";

    for (std::size_t c = 0; c < curves.size(); ++c)
    {
        const auto& curve = curves[c];
        const char* color = kPalette[c % std::size(kPalette)];
        std::ostringstream path;
        double rho = curve.rho(1.0);
        path << "M " << num(sx(1.0)) << ' ' << num(sy(rho));
        for (const auto& [tau, r] : curve.breakpoints)
        {
            if (tau <= 1.0)
            {
                continue;
            }
            if (tau > tau_max)
            {
                break;
            }
            path << " H " << num(sx(tau)) << " V " << num(sy(r));
            rho = r;
        }
        path << " H " << num(sx(tau_max));
        os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";

        const double ly = top + 16 + 16.0 * static_cast<double>(c);
        os << "<line x1=\"" << left + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << left + pw - 125
           << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw - 120 << "\" y=\"" << ly + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(curve.solver)
           << "</text>\n";
    }
    os << "</svg>\n";
}

void emit_profile_plot(const std::vector<ProfileCurve>& curves, const std::string& stem,
                       const std::string& title, double tau_max)
{
    {
        std::ofstream svg(stem + ".svg", std::ios::binary);
        if (!svg)
        {
            throw std::runtime_error("cannot write '" + stem + ".svg'");
        }
        write_profile_svg(svg, curves, title, tau_max);
    }
    std::ofstream txt(stem + ".txt", std::ios::binary);
    if (!txt)
    {
        throw std::runtime_error("cannot write '" + stem + ".txt'");
    }
    write_breakpoints(txt, curves);
}

} // namespace dms
