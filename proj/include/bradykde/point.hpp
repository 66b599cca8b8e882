#pragma once

namespace bradykde {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

}  // namespace bradykde
