#pragma once

// Built-in specification library sources. Shipped inside the binary so the
// checker works with no support files installed.

#include <string_view>
#include <vector>

namespace guicheck {
namespace stdlib_sources {

inline constexpr std::string_view kHScrollbar = R"gspec(
HScrollbar = {
  variables {
    Triangle t1, t2;
    Rectangle r1, r2, r3;
  }
  properties {
    X = r1.X;
    Y = r1.Y;
    WIDTH = r1.WIDTH + r2.WIDTH + r3.WIDTH;
    HEIGHT = r1.HEIGHT;
  }
  constraints {
    (((r1 contains t1) leftto r2) leftto (r3 contains t2));
  }
}
)gspec";

inline constexpr std::string_view kPushedRadiobutton = R"gspec(
PushedRadiobutton = {
  variables {
    Ellipse e1, e2;
  }
  properties {
    X = e1.x;
    Y = e1.y;
    WIDTH = e1.width;
    HEIGHT = e1.height;
  }
  constraints {
    (e1 contains e2);
  }
}
)gspec";

inline constexpr std::string_view kEditbox = R"gspec(
Editbox = {
  variables {
    Rectangle r;
  }
  constraints {
    true;
  }
}
)gspec";

inline constexpr std::string_view kEditboxOverflow = R"gspec(
EditboxOverflow = {
  variables {
    Textrect t1;
    Editbox eb;
    HScrollbar hb;
  }
  properties {
    X = eb.x;
    Y = eb.y;
    WIDTH = eb.width;
    HEIGHT = eb.height;
  }
  constraints {
    (eb contains t1);
    (t1.width > eb.width) implies ((eb contains hb) and (t1 above hb));
  }
}
)gspec";

inline constexpr std::string_view kHLine = R"gspec(
HLine = {
  variables {
    Line ln;
  }
  constraints {
    ((ln.y1 == ln.y2) and (ln.x1 < ln.x2));
  }
}
)gspec";

inline constexpr std::string_view kExtRectangle = R"gspec(
ExtRectangle = {
  variables {
    Rectangle r;
  }
  properties {
    x2 = (r.x + r.width);
    y2 = (r.y + r.height);
  }
  constraints {
    true;
  }
}
)gspec";

inline constexpr std::string_view kExtTextRect = R"gspec(
ExtTextRect = {
  variables {
    Textrect r;
  }
  properties {
    x2 = (r.x + r.width);
    y2 = (r.y + r.height);
    text = r.text;
  }
  constraints {
    true;
  }
}
)gspec";

inline constexpr std::string_view kMenuWithSeparator = R"gspec(
MenuWithSeparator = {
  variables {
    Textrect m1;
    Textrect m2;
    HLine sep;
  }
  constraints {
    ((m1.text equals 'Properties') and (m2.text equals 'Parent Directory'))
      implies ((m1 above sep) and (sep above m2));
  }
}
)gspec";

inline constexpr std::string_view kMainMenuLabel = R"gspec(
MainMenuLabel = {
  variables {
    ExtTextRect m;
    ExtRectangle hotkey;
  }
  constraints {
    (m.text equals 'Markers');
    (m above hotkey);
    (hotkey.height < 3);
    (m.x < (hotkey.x - 1));
    (hotkey.x2 < (m.x2 - 1));
    (hotkey.y > (m.y2 + 1));
    (hotkey.y < (m.y2 + 4));
  }
}
)gspec";

inline constexpr std::string_view kOrderedTracks = R"gspec(
OrderedTracks = {
  variables {
    Textrect track_x;
    Textrect track_y;
  }
  constraints {
    ((track_x.text == 'Track2') and (track_y.text == 'Track10')) implies (track_x above track_y);
  }
}
)gspec";

inline constexpr std::string_view kCroppedLabels = R"gspec(
CroppedLabels = {
  variables {
    Textrect label1, label2, label3, label4;
  }
  constraints {
    (label1.text == 'Cookie');
    (label2.text == 'Method');
    (label3.text == 'Post parameter');
    (label4.text == 'SQLMap');
  }
}
)gspec";

inline constexpr std::string_view kResizedCanvas = R"gspec(
ResizedCanvas = {
  variables {
    Rectangle rInches, rCms, rPixels;
  }
  constraints {
    (rInches contains rCms);
    (rCms contains rPixels);
  }
}
)gspec";

inline constexpr std::string_view kCheckToolTips = R"gspec(
CheckToolTips = {
  variables {
    Textrect Line, Curve, RoundedRectangle, Rectangle, Polygon,
    Ellipse, Select, Eraser, FillWithColor, PickColor, Magnifier,
    Pencil, Brush, Airbrush, Text, FreeFormSelect, MagicWandSelect;
  }
  constraints {
    (Line.text equals 'Line');
    (Curve.text equals 'Curve');
    (RoundedRectangle.text equals 'Rounded Rectangle');
    (Rectangle.text equals 'Rectangle');
    (Polygon.text equals 'Polygon');
    (Ellipse.text equals 'Ellipse');
    (Select.text equals 'Select');
    (Eraser.text equals 'Eraser');
    (FillWithColor.text equals 'Fill With Color');
    (PickColor.text equals 'Pick Color');
    (Magnifier.text equals 'Magnifier');
    (Pencil.text equals 'Pencil');
    (Brush.text equals 'Brush');
    (Airbrush.text equals 'Airbrush');
    (Text.text equals 'Text');
    (FreeFormSelect.text equals 'Free-Form Select');
    (MagicWandSelect.text equals 'Magic Wand Select');
  }
}
)gspec";

inline constexpr std::string_view kCheckOKCancel = R"gspec(
CheckOKCancel = {
  variables {
    Textrect OK, Cancel;
  }
  constraints {
    ((OK.text equals 'OK') and (Cancel.text equals 'CANCEL')) implies
      ((OK.Y == Cancel.Y) and ((OK.X + OK.Width) < Cancel.X));
  }
}
)gspec";

inline constexpr std::string_view kRightToLeft = R"gspec(
RightToLeft = {
  variables {
    Editbox eb;
    Textrect t1, t2;
  }
  constraints {
    (eb contains t1);
    (eb contains t2);
    (t1.width < eb.width);
    (t2.width < eb.width);
    (t1 above t2);
    ((t1.width > t2.width) implies (t1.x < t2.x));
    ((t1.width < t2.width) implies (t1.x > t2.x));
    ((t1.width == t2.width) implies (t1.x == t2.x));
  }
}
)gspec";

inline const std::vector<std::string_view>& all() {
  static const std::vector<std::string_view> kAll = {
      kHScrollbar,   kPushedRadiobutton, kEditbox,       kEditboxOverflow, kHLine,
      kExtRectangle, kExtTextRect,       kMenuWithSeparator, kMainMenuLabel,
      kOrderedTracks, kCroppedLabels,    kResizedCanvas, kCheckToolTips,   kCheckOKCancel,
      kRightToLeft};
  return kAll;
}

}  // namespace stdlib_sources
}  // namespace guicheck
