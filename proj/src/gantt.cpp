#include <disasm/gantt.hpp>

#include <sstream>

namespace disasm {

namespace {

int row_of(Resource r) {
    switch (r) {
        case Resource::Arm1S1:
        case Resource::Arm1S3: return 0;
        case Resource::Arm2S1:
        case Resource::Arm2S3: return 1;
        case Resource::ExternalAxisS2: return 2;
    }
    return 2;
}

const char* fill_of(int stage) {
    switch (stage) {
        case 1: return "#e6a23c";  // tool change
        case 2: return "#5b8ff9";  // pose adjustment
        default: return "#67c23a"; // disassembly
    }
}

}  // namespace

std::string gantt_svg(const SchedInstance& inst, const Schedule& schedule) {
    constexpr int kRowHeight = 36;
    constexpr int kBarHeight = 24;
    constexpr int kLeft = 110;
    constexpr int kTop = 20;
    constexpr double kChartWidth = 960.0;
    const double span = schedule.makespan_ms > 0 ? static_cast<double>(schedule.makespan_ms) : 1.0;
    const double scale = kChartWidth / span;

    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    const int height = kTop + 3 * kRowHeight + 30;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kLeft + kChartWidth + 20
       << "\" height=\"" << height << "\">\n";
    static const char* rows[3] = {"Arm1", "Arm2", "ExternalAxis"};
    for (int r = 0; r < 3; ++r) {
        const int y = kTop + r * kRowHeight;
        os << "  <text x=\"8\" y=\"" << y + kBarHeight - 6 << "\" font-size=\"13\">" << rows[r]
           << "</text>\n";
        os << "  <line x1=\"" << kLeft << "\" y1=\"" << y + kRowHeight - 4 << "\" x2=\""
           << kLeft + kChartWidth << "\" y2=\"" << y + kRowHeight - 4
           << "\" stroke=\"#ddd\"/>\n";
    }
    for (const SchedTask& t : inst.tasks) {
        const double x = kLeft + schedule.starts_ms[static_cast<std::size_t>(t.id)] * scale;
        const double w = t.duration_ms * scale;
        const int y = kTop + row_of(t.resource) * kRowHeight;
        os << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
           << kBarHeight << "\" fill=\"" << fill_of(t.stage)
           << "\" stroke=\"#333\" stroke-width=\"0.5\"><title>part " << t.part << " S" << t.stage
           << " [" << schedule.starts_ms[static_cast<std::size_t>(t.id)] << ","
           << schedule.starts_ms[static_cast<std::size_t>(t.id)] + t.duration_ms
           << ") ms</title></rect>\n";
        if (t.stage == 3 && w > 18.0) {
            os << "  <text x=\"" << x + 3.0 << "\" y=\"" << y + kBarHeight - 8
               << "\" font-size=\"10\" fill=\"#fff\">" << t.part << "</text>\n";
        }
    }
    os << "  <text x=\"" << kLeft << "\" y=\"" << height - 8 << "\" font-size=\"12\">makespan "
       << schedule.makespan_ms << " ms</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace disasm
