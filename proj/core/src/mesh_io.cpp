#include "nullfront/mesh_io.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

namespace nullfront::meshio {

namespace {

struct File {
    std::FILE* f = nullptr;
    explicit File(const std::string& path) : f(std::fopen(path.c_str(), "wb")) {
        if (!f) throw std::runtime_error("cannot open output file: " + path);
    }
    ~File() {
        if (f) std::fclose(f);
    }
    File(const File&) = delete;
    File& operator=(const File&) = delete;
};

}  // namespace

void export_mesh(const frontgen::NullFront& front, const std::string& path, bool raw_axes) {
    if (front.space_dim() != 2)
        throw std::invalid_argument("mesh export is defined for curve-generated fronts in R^3_1");
    const int nt = front.t_count();
    const int ns = front.x_count();
    const bool closed = front.generator().closed();

    File out(path);
    std::fprintf(out.f, "# nullfront lattice mesh: %d x %d\n", nt, ns);
    for (int j = 0; j < nt; ++j) {
        const double t = front.t_value(j);
        for (int k = 0; k < ns; ++k) {
            const Eigen::VectorXd p = front.point(t, k);
            if (raw_axes)
                std::fprintf(out.f, "v %.17g %.17g %.17g\n", p(0), p(1), p(2));
            else
                std::fprintf(out.f, "v %.17g %.17g %.17g\n", p(1), p(2), p(0));
        }
    }
    const int s_quads = closed ? ns : ns - 1;
    for (int j = 0; j + 1 < nt; ++j)
        for (int k = 0; k < s_quads; ++k) {
            const int k1 = (k + 1) % ns;
            const int a = j * ns + k + 1;  // OBJ indices are 1-based
            const int b = j * ns + k1 + 1;
            const int c = (j + 1) * ns + k1 + 1;
            const int d = (j + 1) * ns + k + 1;
            std::fprintf(out.f, "f %d %d %d %d\n", a, b, c, d);
        }
}

void export_locus_csv(const singular::SingularLocus& locus, const frontgen::NullFront& front,
                      const std::string& path) {
    const int n = front.space_dim();
    File out(path);
    if (n == 2)
        std::fprintf(out.f, "s,branch,t,X0,X1,X2,class\n");
    else
        std::fprintf(out.f, "u,v,branch,t,X0,X1,X2,X3,class\n");

    auto class_name = [](singular::PointClass c) {
        switch (c) {
            case singular::PointClass::CuspidalEdge: return "cuspidal-edge";
            case singular::PointClass::NonCuspidal: return "non-cuspidal";
            case singular::PointClass::Undetermined: return "undetermined";
            default: return "unclassified";
        }
    };
    for (const auto& p : locus.points) {
        if (n == 2) {
            std::fprintf(out.f, "%.17g,%d,%.17g,%.17g,%.17g,%.17g,%s\n",
                         front.generator().param(p.x_index), p.branch, p.t, p.image(0),
                         p.image(1), p.image(2), class_name(p.cls));
        } else {
            const auto& gen = front.generator();
            const int iu = p.x_index / gen.grid_v();
            const int iv = p.x_index % gen.grid_v();
            std::fprintf(out.f, "%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                         gen.param_u(iu), gen.param_v(iv), p.branch, p.t, p.image(0), p.image(1),
                         p.image(2), p.image(3), class_name(p.cls));
        }
    }
}

}  // namespace nullfront::meshio
