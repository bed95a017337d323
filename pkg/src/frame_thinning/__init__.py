# frame-thinning: finite frame analysis and density-(1+eps) subframe extraction
