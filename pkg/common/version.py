mixcdf_version = "0.1"
