{"format":"cc-v1","cells":["TRI_PILLOW"],"benign":[false],"gluings":[[0,0,0,1,0,true]]}
