#ifndef APTK_KTHEORY_REPORT_HPP
#define APTK_KTHEORY_REPORT_HPP

#include "ktheory/ktheory.hpp"

namespace aptk {

enum class ReportFormat { text, structured };

std::string render_report(const KTheoryReport& r, ReportFormat format);

// parse the structured format back (lossless round trip)
KTheoryReport report_from_json(const std::string& text);

// one Table-1-shaped summary line
std::string table_row(const KTheoryReport& r);
std::string table_header();

// structured dump of a complex (cells, incidences, orientations, matrices)
std::string dump_complex(const ApComplex& cx, const CochainSystem& cs);

} // namespace aptk

#endif
